"""Generate src/orbdim/data/schellekens.json and verify its invariants.

Entries are keyed by Schellekens' original numbering 0..70.  Structures are written as factor lists
[letter, rank, level]; the two non-semisimple rows are the trivial algebra
and the abelian rank-24 algebra.
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from orbdim.cartan import classical_dimension, dual_coxeter  # noqa: E402

# (number, [[letter, rank, level], ...], abelian_rank, flags)
RAW = [
    (0, [], 0, ""),
    (1, [], 24, ""),
    (2, [["A", 1, 4]] * 12, 0, ""),
    (3, [["A", 2, 6], ["D", 4, 12]], 0, ""),
    (4, [["C", 4, 10]], 0, ""),
    (5, [["A", 1, 2]] * 16, 0, ""),
    (6, [["A", 2, 3]] * 6, 0, ""),
    (7, [["A", 1, 2], ["A", 3, 4], ["A", 3, 4], ["A", 3, 4]], 0, ""),
    (8, [["A", 1, 2], ["D", 5, 8]], 0, ""),
    (9, [["A", 4, 5], ["A", 4, 5]], 0, ""),
    (10, [["A", 6, 7]], 0, ""),
    (11, [["A", 2, 2]] * 5 + [["B", 2, 2]] * 2, 0, "uncertain-transcription"),
    (12, [["B", 2, 2]] * 6, 0, "uncertain-transcription"),
    (13, [["A", 2, 2]] * 4 + [["D", 4, 4]], 0, ""),
    (14, [["A", 2, 2], ["F", 4, 6]], 0, ""),
    (15, [["A", 1, 1]] * 24, 0, ""),
    (16, [["A", 3, 2]] * 4 + [["A", 1, 1]] * 4, 0, ""),
    (17, [["A", 5, 3], ["D", 4, 3]] + [["A", 1, 1]] * 3, 0, ""),
    (18, [["A", 7, 4]] + [["A", 1, 1]] * 3, 0, ""),
    (19, [["D", 5, 4], ["C", 3, 2]] + [["A", 1, 1]] * 2, 0, ""),
    (20, [["D", 6, 5]] + [["A", 1, 1]] * 2, 0, ""),
    (21, [["A", 1, 1], ["C", 5, 3], ["G", 2, 2]], 0, ""),
    (22, [["A", 4, 2], ["A", 4, 2], ["C", 4, 2]], 0, ""),
    (23, [["B", 3, 2]] * 4, 0, ""),
    (24, [["A", 2, 1]] * 12, 0, ""),
    (25, [["D", 4, 2], ["D", 4, 2]] + [["B", 2, 1]] * 4, 0, ""),
    (26, [["A", 2, 1], ["A", 2, 1], ["A", 5, 2], ["A", 5, 2], ["B", 2, 1]], 0, ""),
    (27, [["A", 8, 3], ["A", 2, 1], ["A", 2, 1]], 0, ""),
    (28, [["F", 4, 3], ["D", 4, 2], ["A", 2, 1], ["A", 2, 1]], 0, "uncertain-transcription"),
    (29, [["E", 6, 4], ["B", 2, 1], ["A", 2, 1]], 0, ""),
    (30, [["B", 4, 2]] * 3, 0, ""),
    (31, [["A", 3, 1]] * 8, 0, ""),
    (32, [["A", 3, 1], ["A", 3, 1], ["D", 5, 2], ["D", 5, 2]], 0, ""),
    (33, [["A", 3, 1], ["A", 7, 2], ["C", 3, 1], ["C", 3, 1]], 0, ""),
    (34, [["E", 6, 3], ["G", 2, 1], ["G", 2, 1], ["G", 2, 1]], 0, ""),
    (35, [["A", 3, 1], ["C", 7, 2]], 0, ""),
    (36, [["A", 8, 2], ["F", 4, 2]], 0, ""),
    (37, [["A", 4, 1]] * 6, 0, ""),
    (38, [["B", 3, 1], ["B", 3, 1], ["C", 4, 1], ["D", 6, 2]], 0, ""),
    (39, [["C", 4, 1]] * 4, 0, ""),
    (40, [["A", 4, 1], ["A", 9, 2], ["B", 3, 1]], 0, ""),
    (41, [["A", 5, 1]] * 4 + [["D", 4, 1]], 0, ""),
    (42, [["D", 4, 1]] * 6, 0, ""),
    (43, [["A", 5, 1], ["E", 7, 3]], 0, ""),
    (44, [["A", 5, 1], ["C", 5, 1], ["E", 6, 2]], 0, ""),
    (45, [["A", 6, 1]] * 4, 0, ""),
    (46, [["A", 6, 1]] + [["B", 4, 1]] * 4, 0, "uncertain-transcription"),
    (47, [["B", 4, 1], ["B", 4, 1], ["D", 8, 2]], 0, ""),
    (48, [["B", 4, 1], ["C", 6, 1], ["C", 6, 1]], 0, ""),
    (49, [["A", 7, 1], ["A", 7, 1], ["D", 5, 1], ["D", 5, 1]], 0, ""),
    (50, [["A", 7, 1], ["D", 9, 2]], 0, ""),
    (51, [["A", 8, 1]] * 3, 0, ""),
    (52, [["C", 8, 1], ["F", 4, 1], ["F", 4, 1]], 0, ""),
    (53, [["B", 5, 1], ["E", 7, 2], ["F", 4, 1]], 0, ""),
    (54, [["A", 9, 1], ["A", 9, 1], ["D", 6, 1]], 0, ""),
    (55, [["D", 6, 1]] * 4, 0, ""),
    (56, [["B", 6, 1], ["C", 10, 1]], 0, ""),
    (57, [["B", 12, 2]], 0, ""),
    (58, [["A", 11, 1], ["D", 7, 1], ["E", 6, 1]], 0, ""),
    (59, [["E", 6, 1]] * 4, 0, ""),
    (60, [["A", 12, 1], ["A", 12, 1]], 0, ""),
    (61, [["D", 8, 1]] * 3, 0, ""),
    (62, [["B", 8, 1], ["E", 8, 2]], 0, ""),
    (63, [["A", 15, 1], ["D", 9, 1]], 0, ""),
    (64, [["A", 17, 1], ["E", 7, 1]], 0, ""),
    (65, [["D", 10, 1], ["E", 7, 1], ["E", 7, 1]], 0, ""),
    (66, [["D", 12, 1], ["D", 12, 1]], 0, ""),
    (67, [["A", 24, 1]], 0, ""),
    (68, [["D", 16, 1], ["E", 8, 1]], 0, ""),
    (69, [["E", 8, 1]] * 3, 0, ""),
    (70, [["D", 24, 1]], 0, ""),
]

# published table numbers cross-checked against the case records
ANCHORS = {
    7: ("A1,2 A3,4 A3,4 A3,4", 48), 9: ("A4,5 A4,5", 48), 13: ("", 60),
    21: ("A1 C5,3 G2,2", 72), 22: ("", 84), 26: ("", 96), 33: ("", 120),
    36: ("A8,2 F4,2", 132), 40: ("", 144), 44: ("", 168), 48: ("", 192),
    52: ("", 240), 53: ("", 240), 56: ("B6 C10", 288), 62: ("B8 E8,2", 384),
}


def main():
    entries = []
    dims_seen = []
    for no, comps, abelian, flags in RAW:
        dim = sum(classical_dimension((c[0], c[1])) for c in comps) + abelian
        if comps:
            ratio = Fraction(dim - 24, 24)
            for letter, rank, level in comps:
                assert Fraction(dual_coxeter((letter, rank)), level) == ratio, (no, letter, rank)
        entries.append({
            "no": no,
            "factors": comps,
            "abelianRank": abelian,
            "dim": dim,
            "transcription": flags or "checked",
        })
        dims_seen.append((no, dim))
    assert [no for no, _ in dims_seen] == list(range(71))
    assert sorted(d for _, d in dims_seen) == [d for _, d in dims_seen], "dims must ascend"
    for no, (_, dim) in ANCHORS.items():
        assert dict(dims_seen)[no] == dim, (no, dict(dims_seen)[no], dim)
    out = Path(__file__).resolve().parents[1] / "src/orbdim/data/schellekens.json"
    out.write_text(json.dumps({"entries": entries}, indent=1) + "\n")
    print(f"wrote {out} with {len(entries)} entries")
    from collections import Counter
    print(Counter(d for _, d in dims_seen))


if __name__ == "__main__":
    main()
