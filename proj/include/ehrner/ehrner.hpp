#pragma once

#include "ehrner/agreement.hpp"
#include "ehrner/audit.hpp"
#include "ehrner/concept_index.hpp"
#include "ehrner/corpus.hpp"
#include "ehrner/error.hpp"
#include "ehrner/evaluation.hpp"
#include "ehrner/instances.hpp"
#include "ehrner/model.hpp"
#include "ehrner/ontology.hpp"
#include "ehrner/synthetic.hpp"
#include "ehrner/text.hpp"
#include "ehrner/transition.hpp"
