"""Reference tables and worked words.

These strings are golden data: the code under test never writes them.
Printed typos are kept as printed; corrected variants live alongside with
a ``_CORRECTED`` suffix and a note on what changed.
"""

from __future__ import annotations

import re

EXAMPLE_211 = """\
1 1 1 0 0 0 0
2 0 0 1 1 0 0
3 0 0 0 0 1 1
0 2 0 2 0 0 2
0 3 0 0 2 2 0
0 0 2 3 0 3 0
0 0 3 0 3 0 3
"""

EXAMPLE_411 = """\
0 1 1 1 1
1 2 2 2 0
2 3 3 0 2
3 0 4 3 3
4 4 0 4 4
"""

EXAMPLE_431 = """\
1 1 0 0 1 0
2 0 1 1 0 0
0 2 2 0 0 1
0 0 0 2 2 2
"""

EXAMPLE_511 = """\
1 1 1 0
2 2 0 1
3 0 2 2
0 3 3 3
"""

# only-erasures collusion tables over full_gossip(4, 3) and over the Fano code
TABLE_1 = """\
1 {1, 2} (e, e, e, e, e, 0)
2 {1, 3} (e, e, e, 0, e, e)
3 {1, 4} (e, e, 0, e, e, e)
4 {2, 3} (e, e, e, e, 0, e)
5 {2, 4} (e, 0, e, e, e, e)
6 {3, 4} (0, e, e, e, e, e)
"""

TABLE_2 = """\
1 {1, 2} (e, e, e, e, e, 0, 0)
2 {1, 3} (e, e, e, 0, 0, e, e)
3 {1, 4} (e, e, e, e, 0, 0, e)
4 {1, 5} (e, e, e, 0, e, e, 0)
5 {1, 6} (e, e, e, e, 0, e, 0)
6 {1, 7} (e, e, e, 0, e, 0, e)
7 {2, 3} (e, 0, 0, e, e, e, e)
8 {2, 4} (e, e, 0, e, e, 0, e)
9 {2, 5} (e, e, 0, e, e, e, 0)
10 {2, 6} (e, 0, e, e, e, e, 0)
11 {2, 7} (e, 0, e, e, e, 0, e)
12 {3, 4} (e, e, 0, e, 0, e, e)
13 {3, 5} (e, e, 0, 0, e, e, e)
14 {3, 6} (e, 0, e, e, 0, e, e)
15 {3, 7} (e, 0, e, 0, e, e, e)
16 {4, 5} (0, e, 0, e, e, e, e)
17 {4, 6} (0, e, e, e, 0, e, e)
18 {4, 7} (0, e, e, e, e, 0, e)
19 {5, 6} (0, e, e, e, e, e, 0)
20 {5, 7} (0, e, e, 0, e, e, e)
21 {6, 7} (0, 0, e, e, e, e, e)
"""

TABLE_3 = """\
1. {3, 6, 7, 12, 14}
2. {4, 7, 8, 13, 15}
3. {5, 8, 9, 14, 16}
4. {6, 9, 10, 15, 17}
5. {7, 10, 11, 16, 18}
6. {8, 11, 12, 17, 19}
7. {9, 12, 13, 18, 20}
8. {10, 13, 14, 19, 21}
9. {11, 14, 15, 20, 1}
10. {12, 15, 16, 21, 2}
11. {13, 16, 17, 1, 3}
12. {14, 17, 18, 2, 4}
13. {15, 18, 19, 3, 5}
14. {16, 19, 20, 4, 6}
15. {17, 20, 21, 5, 7}
16. {18, 21, 1, 6, 8}
17. {19, 1, 2, 7, 9}
18. {20, 2, 3, 8, 10}
19. {21, 3, 4, 9, 11}
20. {1, 4, 5, 10, 12}
21. {2, 5, 6, 11, 13}
"""

# only rows 1..20 are printed
APPENDIX_MATRIX = """\
0 0 0 0 0 0 0 0 5 0
0 0 0 0 0 0 0 0 0 5
1 0 0 0 0 0 0 0 0 0
0 1 0 0 0 0 0 0 0 0
0 0 1 0 0 0 0 0 0 0
2 0 0 1 0 0 0 0 0 0
3 2 0 0 1 0 0 0 0 0
0 3 2 0 0 1 0 0 0 0
0 0 3 2 0 0 1 0 0 0
0 0 0 3 2 0 0 1 0 0
0 0 0 0 3 2 0 0 1 0
4 0 0 0 0 3 2 0 0 1
0 4 0 0 0 0 3 2 0 0
5 0 4 0 0 0 0 3 2 0
0 5 0 4 0 0 0 0 3 2
0 0 5 0 4 0 0 0 0 3
0 0 0 5 0 4 0 0 0 0
0 0 0 0 5 0 4 0 0 0
0 0 0 0 0 5 0 4 0 0
0 0 0 0 0 0 5 0 4 0
"""

# inner-alphabet words of the binary-inner tracing walkthrough
SEC5_WORD = "0 0 1 0 0 0 0 0 0 1 0 0 0 0 1 0 0 1 0 0"
SEC511_WORD1 = "2 2 2 2 2 2 0 1 1 1 1 1 1 0 1 1 2 1 1 1 1 1 0 1 1 1 0"
SEC511_WORD2 = "2 2 2 2 1 2 0 0 1 1 1 0 1 1 0 1 1 2 1 1 1 1 1 0 1 1 1 0"

# SEC5_WORD has 20 bits for 7 segments of 3; re-encoding its symbol rewrite
# (2, e, e, 1, e, 0, 0) with undetected segments 6 and 7 gives 21 bits.
SEC5_WORD_CORRECTED = "0 0 1 0 0 0 0 0 0 0 1 0 0 0 0 1 0 0 1 0 0"
# SEC511_WORD1 has 27 symbols; segment 3 is missing one "1".
SEC511_WORD1_CORRECTED = "2 2 2 2 2 2 0 1 1 1 1 1 1 1 0 1 1 2 1 1 1 1 1 0 1 1 1 0"


def matrix(text: str) -> list[list[int]]:
    return [[int(x) for x in line.split()] for line in text.strip().splitlines()]


def table_rows(text: str) -> list[tuple[tuple[int, ...], tuple[str, ...]]]:
    """(coalition, word tokens) per row of a collusion table."""
    rows = []
    for line in text.strip().splitlines():
        sets = re.search(r"\{([^}]*)\}", line).group(1)
        word = re.search(r"\(([^)]*)\)", line).group(1)
        rows.append((tuple(int(x) for x in sets.split(",")),
                     tuple(t.strip() for t in word.split(","))))
    return rows


def table3_keys(text: str = TABLE_3) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in re.search(r"\{([^}]*)\}", line).group(1).split(","))
            for line in text.strip().splitlines()]

# traced pirate sets stated for SEC511_WORD1 and SEC511_WORD2
SEC511_TRACED = """\
{w1}
{w1, w2}
"""
