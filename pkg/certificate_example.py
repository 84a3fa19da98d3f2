"""
Example payloads of the cycle-nice toolkit.

Each example pairs an edge-list input with the JSON that the library writes
for it: construction certificates (``decompose --out``), oracle verdicts
(``check --method oracle --json``) and recognizer verdicts
(``check --json``).
"""

# Example 1: the six-vertex quasi-diamond, an even subdivision of the diamond
quasi_diamond_edges = """6 7
0 2
1 2
1 3
2 3
0 4
4 5
5 1
"""

quasi_diamond_certificate = {
    "base": {"kind": "Diamond"},
    "steps": [
        {"kind": "EvenSubdivision", "edge": 0, "path_len": 3}
    ]
}

# Example 2: an even cycle is its own base
c4_edges = """4 4
0 1
1 2
2 3
3 0
"""

c4_certificate = {
    "base": {"kind": "EvenCycle", "length": 4},
    "steps": []
}

# Example 3: the triangular prism with the rung 2-5 doubled (edge 5 of the base)
prism_doubled_rung_certificate = {
    "base": {"kind": "C6bar"},
    "steps": [
        {"kind": "MultiEdgeReplace", "edge": 5, "multiplicity": 2}
    ]
}

# Example 4: the diamond as an odd A-expansion of the 2-cycle
diamond_from_two_cycle_certificate = {
    "base": {"kind": "EvenCycle", "length": 2},
    "steps": [
        {
            "kind": "OddAExpansion",
            "vertex": 0,
            "side_a": [0],
            "side_b": [1],
            "path_len": 2,
            "bridge_mult": 1
        }
    ]
}

# Example 5: a 6-cycle with chords 0-2 and 3-5 is not cycle-nice
chorded_c6_edges = """6 8
0 1
1 2
2 3
3 4
4 5
5 0
0 2
3 5
"""

chorded_c6_oracle_verdict = {
    "kind": "Witness",
    "witness": {
        "vertices": [0, 2, 3, 5],
        "edge_ids": [6, 2, 7, 5]
    }
}

chorded_c6_verdict = {
    "kind": "Reject",
    "witness": {
        "vertices": [0, 2, 3, 5],
        "edge_ids": [6, 2, 7, 5]
    }
}

# Example 6: odd order has no perfect matching
c5_oracle_verdict = {
    "kind": "NotMatchable"
}

c5_verdict = {
    "kind": "Reject",
    "reason": "NotMatchable"
}

# Example 7: the wheel W5 lies outside the construction and is decided by the oracle
w5_verdict = {
    "kind": "AcceptOracle",
    "note": "simple support is W5; decided by the cycle oracle"
}

# Example 8: the claw K1,3 is outside the recognizer's scope
claw_verdict = {
    "kind": "OutOfScope",
    "reason": "Not2Connected"
}
