#!/usr/bin/env python3
"""Regenerates the headers that embed the shipped data files."""
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent

TARGETS = [
    ("data/seed_catalog.json", "include/ehrner/seed_catalog.hpp", "seed_catalog_json"),
    ("data/synthetic_config.json", "include/ehrner/synthetic_config.hpp", "default_generator_config_json"),
]

for src, dst, name in TARGETS:
    body = (ROOT / src).read_text(encoding="utf-8")
    assert ')json"' not in body
    out = (
        "#pragma once\n\n"
        f"// Generated from {src} by tools/embed_data.py. Do not edit by hand.\n\n"
        "#include <string_view>\n\n"
        "namespace ehrner {\n\n"
        f"inline constexpr std::string_view {name} = R\"json({body})json\";\n\n"
        "}  // namespace ehrner\n"
    )
    (ROOT / dst).write_text(out, encoding="utf-8")
    print("wrote", dst)
