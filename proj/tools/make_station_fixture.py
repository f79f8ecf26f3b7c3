#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The pekg Authors
"""Writes the 500 kV station document used by the acceptance suite.

Two transformers, eight capacitors, 40 breakers and 84 switches. Every breaker
sits between two switches named after it (breaker #5021 -> #50211, #50212).
"""

import argparse
import json
import sys

FIRST_LEVEL = [
    "Operator",
    "Operations",
    "Components",
    "Voltage-Level",
    "State-Convert",
    "Manufacturer",
    "External-Lines",
    "Internal-Lines",
]
SECOND_LEVEL = ["Transformer", "Capacitor", "Breaker", "Switch"]

SYSTEMS_1 = ("Operation System 1", "Management System 1")
SYSTEMS_2 = ("Operation System 2", "Management System 2")


def component(cid, label, cls, voltage, maker, systems):
    return {
        "id": cid,
        "label": label,
        "ontology_class": cls,
        "voltage_level": voltage,
        "manufacturer": maker,
        "operator_system": systems[0],
        "management_system": systems[1],
    }


def breakers():
    out = []
    for d in range(1, 5):
        for k in range(1, 4):
            out.append((f"50{d}{k}", "500 kV"))
    out += [(f"22{n:02d}", "220 kV") for n in range(1, 15)]
    out += [(f"35{n:02d}", "35 kV") for n in range(1, 15)]
    return out


def build():
    components, connections = [], []

    components.append(component("T1", "Transformer #1", "Transformer", "500 kV", "Manufacturer 1", SYSTEMS_1))
    components.append(component("T2", "Transformer #2", "Transformer", "500 kV", "Manufacturer 2", SYSTEMS_2))

    for num, voltage in breakers():
        systems = SYSTEMS_1 if voltage == "500 kV" else SYSTEMS_2
        label = f"#{num}"
        components.append(component("B" + num, label, "Breaker", voltage, "Manufacturer 3", systems))
        for side in (1, 2):
            sw = f"#{num}{side}"
            components.append(component(f"S{num}{side}", sw, "Switch", voltage, "Manufacturer 4", systems))
            connections.append([label, sw])

    for num, voltage in (("2016", "220 kV"), ("3016", "35 kV"), ("2026", "220 kV"), ("3026", "35 kV")):
        components.append(component("S" + num, "#" + num, "Switch", voltage, "Manufacturer 4", SYSTEMS_2))

    for k in range(1, 9):
        components.append(
            component(f"C{k}", f"Capacitor #{k}", "Capacitor", "35 kV", "Manufacturer 5", SYSTEMS_2)
        )
        connections.append([f"Capacitor #{k}", f"#35{k + 2:02d}1"])

    connections += [
        ["Transformer #1", "#2016"],
        ["Transformer #1", "#3016"],
        ["Transformer #1", "#50212"],
        ["Transformer #1", "#50221"],
        ["Transformer #2", "#2026"],
        ["Transformer #2", "#3026"],
        ["Transformer #2", "#50312"],
        ["Transformer #2", "#50321"],
        ["#2016", "#22011"],
        ["#3016", "#35011"],
        ["#2026", "#22021"],
        ["#3026", "#35021"],
    ]

    classes = FIRST_LEVEL + [{"label": c, "parent": "Components"} for c in SECOND_LEVEL]
    return {
        "station": {"label": "500 kV Station", "voltage_class": "500 kV"},
        "ontology_classes": classes,
        "components": components,
        "connections": connections,
        "systems": [
            {"label": "Operation System 1", "kind": "Operation", "controlled_by": "Electrical Company 1"},
            {"label": "Management System 1", "kind": "Management", "controlled_by": "Electrical Company 1"},
            {"label": "Operation System 2", "kind": "Operation", "controlled_by": "Electrical Company 2"},
            {"label": "Management System 2", "kind": "Management", "controlled_by": "Electrical Company 2"},
        ],
        "companies": ["Electrical Company 1", "Electrical Company 2"],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-o", "--out", help="output path (default: stdout)")
    args = ap.parse_args()
    doc = build()
    counts = {}
    for c in doc["components"]:
        counts[c["ontology_class"]] = counts.get(c["ontology_class"], 0) + 1
    assert counts == {"Transformer": 2, "Capacitor": 8, "Breaker": 40, "Switch": 84}, counts
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
