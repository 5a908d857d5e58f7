#!/usr/bin/env python3
"""Regenerate the benchmark corpus and the test-only fixtures.

Each fixture is a hand-written correct program plus an input grid; expected
outputs are computed by running the correct program, then sanity-checked.
Dead-feature fixtures route work through a mode dispatch so that most tests
exercise code independent of the seeded bug; plain fixtures keep every test
relevant and give the slicer irreducible subjects.

Usage: python3 scripts/make_corpus.py [repo-root]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from slicemend import RunStatus, parse, run

ROOT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent

DEAD = ["dead-feature"]

# name -> (tags, source, input variables, test grid)
CORPUS: dict[str, tuple[list[str], str, list[str], list[tuple[str, dict]]]] = {}


def fixture(name: str, tags: list[str], source: str, variables: list[str],
            grid: list[tuple[str, dict]]) -> None:
    CORPUS[name] = (tags, source.strip("\n"), variables, grid)


def m(name: str, **inputs) -> tuple[str, dict]:
    return name, inputs


fixture(
    "tariff_gate",
    DEAD,
    """
# tariff billing with a gated surcharge and diagnostic modes
rate = 5
if x > y {
  rate = x - y + 10
}
if mode == 1 {
  bill = rate * q
  print rate
  print bill
}
t1 = nb + nc
t2 = t1 * nc
if mode == 2 {
  print t1
  print t2 - nb
}
c1 = nc % 7
c2 = c1 + 40
if mode == 3 {
  print c2
  print c1 * 2
}
""",
    ["mode", "x", "y", "q", "nb", "nc"],
    [
        m("m1_wide_a", mode=1, x=9, y=2, q=3),
        m("m1_wide_b", mode=1, x=12, y=5, q=2),
        m("m1_wide_c", mode=1, x=7, y=1, q=6),
        m("m1_near_a", mode=1, x=5, y=4, q=2),
        m("m1_eq_a", mode=1, x=4, y=4, q=2),
        m("m1_eq_b", mode=1, x=6, y=6, q=3),
        m("m1_eq_c", mode=1, x=0, y=0, q=5),
        m("m1_low_a", mode=1, x=2, y=5, q=1),
        m("m1_low_b", mode=1, x=1, y=9, q=4),
        m("m2_a", mode=2, nb=1, nc=2),
        m("m2_b", mode=2, nb=3, nc=4),
        m("m2_c", mode=2, nb=5, nc=6),
        m("m2_d", mode=2, nb=0, nc=9),
        m("m2_e", mode=2, nb=7, nc=7),
        m("m2_f", mode=2, nb=2, nc=8),
        m("m2_g", mode=2, nb=4, nc=1),
        m("m3_a", mode=3, nc=1),
        m("m3_b", mode=3, nc=5),
        m("m3_c", mode=3, nc=9),
        m("m3_d", mode=3, nc=13),
        m("m3_e", mode=3, nc=20),
        m("m3_f", mode=3, nc=6),
        m("m0_a", mode=0),
        m("m0_b", mode=0, x=8, y=3),
        m("m0_c", mode=0, x=2, y=2),
    ],
)

fixture(
    "abs_ledger",
    DEAD,
    """
# ledger fee schedule with audit modes
fee = 2
if p > 50 {
  fee = p / 10
}
if mode == 1 {
  d = p - q
  if d < 0 {
    d = 0 - d
  }
  print d
  print d + fee
}
a1 = na * 3
a2 = a1 - na
if mode == 2 {
  print a2
  print a1 + 9
}
if mode == 3 {
  print na % 5
  print na / 2
}
""",
    ["mode", "p", "q", "na"],
    [
        m("m1_hi_a", mode=1, p=80, q=30),
        m("m1_hi_b", mode=1, p=64, q=90),
        m("m1_hi_c", mode=1, p=71, q=5),
        m("m1_hi_d", mode=1, p=99, q=99),
        m("m1_edge_a", mode=1, p=50, q=20),
        m("m1_edge_b", mode=1, p=50, q=75),
        m("m1_edge_c", mode=1, p=50, q=50),
        m("m1_lo_a", mode=1, p=12, q=40),
        m("m1_lo_b", mode=1, p=30, q=7),
        m("m1_lo_c", mode=1, p=8, q=8),
        m("m2_a", mode=2, na=1),
        m("m2_b", mode=2, na=4),
        m("m2_c", mode=2, na=7),
        m("m2_d", mode=2, na=0),
        m("m2_e", mode=2, na=12),
        m("m2_f", mode=2, na=9),
        m("m3_a", mode=3, na=3),
        m("m3_b", mode=3, na=10),
        m("m3_c", mode=3, na=17),
        m("m3_d", mode=3, na=25),
        m("m3_e", mode=3, na=6),
        m("m0_a", mode=0),
        m("m0_b", mode=0, p=77, q=1),
    ],
)

fixture(
    "bonus_tiers",
    DEAD,
    """
# score bonus tiers with reporting modes
bonus = 1
if hits >= 12 {
  bonus = hits / 4
}
if mode == 1 {
  score = hits * 5 + bonus
  print bonus
  print score
}
b1 = nb + 6
b2 = b1 * 2
if mode == 2 {
  print b1
  print b2 + nb
}
if mode == 3 {
  print nc * nc
  print nc - 3
}
""",
    ["mode", "hits", "nb", "nc"],
    [
        m("m1_top_a", mode=1, hits=20),
        m("m1_top_b", mode=1, hits=16),
        m("m1_top_c", mode=1, hits=33),
        m("m1_top_d", mode=1, hits=13),
        m("m1_edge_a", mode=1, hits=12),
        m("m1_edge_b", mode=1, hits=11),
        m("m1_low_a", mode=1, hits=3),
        m("m1_low_b", mode=1, hits=0),
        m("m1_low_c", mode=1, hits=7),
        m("m2_a", mode=2, nb=1),
        m("m2_b", mode=2, nb=5),
        m("m2_c", mode=2, nb=8),
        m("m2_d", mode=2, nb=0),
        m("m2_e", mode=2, nb=11),
        m("m2_f", mode=2, nb=2),
        m("m3_a", mode=3, nc=2),
        m("m3_b", mode=3, nc=6),
        m("m3_c", mode=3, nc=9),
        m("m3_d", mode=3, nc=0),
        m("m3_e", mode=3, nc=14),
        m("m0_a", mode=0),
        m("m0_b", mode=0, hits=15),
    ],
)

fixture(
    "surcharge_bands",
    DEAD,
    """
# parcel surcharge bands with audit modes
fee = 3
if w > 10 {
  fee = w - 6
}
if w > 50 {
  fee = w / 2
}
if mode == 1 {
  print fee
  print fee * q
}
g1 = ng * 4
if mode == 2 {
  print g1
  print g1 - ng
}
g2 = ng + 25
if mode == 3 {
  print g2
}
""",
    ["mode", "w", "q", "ng"],
    [
        m("m1_band0_a", mode=1, w=4, q=2),
        m("m1_band0_b", mode=1, w=9, q=5),
        m("m1_edge1_a", mode=1, w=10, q=3),
        m("m1_edge1_b", mode=1, w=11, q=3),
        m("m1_band1_a", mode=1, w=25, q=2),
        m("m1_band1_b", mode=1, w=40, q=1),
        m("m1_edge2_a", mode=1, w=50, q=2),
        m("m1_edge2_b", mode=1, w=51, q=4),
        m("m1_band2_a", mode=1, w=80, q=3),
        m("m1_band2_b", mode=1, w=66, q=2),
        m("m2_a", mode=2, ng=1),
        m("m2_b", mode=2, ng=3),
        m("m2_c", mode=2, ng=6),
        m("m2_d", mode=2, ng=0),
        m("m2_e", mode=2, ng=9),
        m("m2_f", mode=2, ng=12),
        m("m3_a", mode=3, ng=2),
        m("m3_b", mode=3, ng=7),
        m("m3_c", mode=3, ng=11),
        m("m3_d", mode=3, ng=30),
        m("m3_e", mode=3, ng=5),
        m("m0_a", mode=0),
        m("m0_b", mode=0, w=55, q=9),
    ],
)

fixture(
    "clamp_modes",
    DEAD,
    """
# capped meter reading with reporting modes
if mode == 1 {
  reading = a * 3 + b
  cap = 90
  if reading > cap {
    reading = cap
  }
  print reading
  print reading - b
}
s1 = nb * 2
s2 = s1 + nc
if mode == 2 {
  print s1
  print s2 * 3
}
if mode == 3 {
  print nc % 4
  print nc + 11
}
""",
    ["mode", "a", "b", "nb", "nc"],
    [
        m("m1_low_a", mode=1, a=5, b=10),
        m("m1_low_b", mode=1, a=2, b=7),
        m("m1_low_c", mode=1, a=10, b=0),
        m("m1_edge_a", mode=1, a=30, b=0),
        m("m1_edge_b", mode=1, a=29, b=3),
        m("m1_hi_a", mode=1, a=40, b=8),
        m("m1_hi_b", mode=1, a=31, b=5),
        m("m1_hi_c", mode=1, a=50, b=50),
        m("m2_a", mode=2, nb=1, nc=2),
        m("m2_b", mode=2, nb=4, nc=5),
        m("m2_c", mode=2, nb=7, nc=0),
        m("m2_d", mode=2, nb=0, nc=9),
        m("m2_e", mode=2, nb=3, nc=3),
        m("m2_f", mode=2, nb=8, nc=6),
        m("m3_a", mode=3, nc=1),
        m("m3_b", mode=3, nc=4),
        m("m3_c", mode=3, nc=7),
        m("m3_d", mode=3, nc=12),
        m("m3_e", mode=3, nc=18),
        m("m0_a", mode=0),
        m("m0_b", mode=0, a=99, b=99),
    ],
)

fixture(
    "window_modes",
    DEAD,
    """
# windowed accumulation with reporting modes
if mode == 1 {
  acc = 0
  i = 1
  while i <= n {
    acc = acc + i * k
    i = i + 1
  }
  print acc
  print acc + n
}
w1 = nw + 8
w2 = w1 * nw
if mode == 2 {
  print w1
  print w2 - 4
}
if mode == 3 {
  print nw * 6
}
""",
    ["mode", "n", "k", "nw"],
    [
        m("m1_a", mode=1, n=1, k=3),
        m("m1_b", mode=1, n=3, k=2),
        m("m1_c", mode=1, n=5, k=1),
        m("m1_d", mode=1, n=0, k=4),
        m("m1_e", mode=1, n=4, k=5),
        m("m1_f", mode=1, n=6, k=2),
        m("m1_g", mode=1, n=2, k=0),
        m("m1_h", mode=1, n=7, k=3),
        m("m2_a", mode=2, nw=1),
        m("m2_b", mode=2, nw=4),
        m("m2_c", mode=2, nw=7),
        m("m2_d", mode=2, nw=0),
        m("m2_e", mode=2, nw=10),
        m("m2_f", mode=2, nw=3),
        m("m3_a", mode=3, nw=2),
        m("m3_b", mode=3, nw=5),
        m("m3_c", mode=3, nw=9),
        m("m3_d", mode=3, nw=12),
        m("m0_a", mode=0),
        m("m0_b", mode=0, n=9, k=9),
    ],
)

fixture(
    "parity_modes",
    DEAD,
    """
# parity counter with reporting modes
if mode == 1 {
  evens = 0
  odds = 0
  i = 0
  while i < n {
    v = base + i
    if v % 2 == 0 {
      evens = evens + 1
    } else {
      odds = odds + 1
    }
    i = i + 1
  }
  print evens
  print odds
}
p1 = np * 3
if mode == 2 {
  print p1 + 2
  print p1 * np
}
if mode == 3 {
  print np - 9
}
""",
    ["mode", "n", "base", "np"],
    [
        m("m1_a", mode=1, n=4, base=0),
        m("m1_b", mode=1, n=5, base=1),
        m("m1_c", mode=1, n=3, base=2),
        m("m1_d", mode=1, n=0, base=7),
        m("m1_e", mode=1, n=6, base=3),
        m("m1_f", mode=1, n=1, base=8),
        m("m1_g", mode=1, n=7, base=5),
        m("m2_a", mode=2, np=1),
        m("m2_b", mode=2, np=4),
        m("m2_c", mode=2, np=6),
        m("m2_d", mode=2, np=0),
        m("m2_e", mode=2, np=9),
        m("m2_f", mode=2, np=3),
        m("m3_a", mode=3, np=2),
        m("m3_b", mode=3, np=11),
        m("m3_c", mode=3, np=20),
        m("m3_d", mode=3, np=5),
        m("m0_a", mode=0),
        m("m0_b", mode=0, n=3, base=1),
    ],
)

fixture(
    "signal_modes",
    DEAD,
    """
# signal diagnostics with a trailing compute mode
z1 = nz + 7
z2 = z1 * 3
z3 = z2 - z1
if mode == 2 {
  print z1
  print z2 - nz
}
if mode == 3 {
  print nz % 6
  print z3 + 1
}
if mode == 1 {
  level = sig * 4
  if level > 60 {
    level = 60
  }
  print level
  print level + sig
}
""",
    ["mode", "sig", "nz"],
    [
        m("m1_low_a", mode=1, sig=2),
        m("m1_low_b", mode=1, sig=9),
        m("m1_low_c", mode=1, sig=0),
        m("m1_edge_a", mode=1, sig=15),
        m("m1_edge_b", mode=1, sig=16),
        m("m1_hi_a", mode=1, sig=25),
        m("m1_hi_b", mode=1, sig=40),
        m("m1_hi_c", mode=1, sig=18),
        m("m2_a", mode=2, nz=1),
        m("m2_b", mode=2, nz=4),
        m("m2_c", mode=2, nz=8),
        m("m2_d", mode=2, nz=0),
        m("m2_e", mode=2, nz=13),
        m("m2_f", mode=2, nz=5),
        m("m3_a", mode=3, nz=2),
        m("m3_b", mode=3, nz=6),
        m("m3_c", mode=3, nz=10),
        m("m3_d", mode=3, nz=17),
        m("m0_a", mode=0),
        m("m0_b", mode=0, sig=30, nz=3),
    ],
)

fixture(
    "absdiff_pair",
    [],
    """
# absolute difference and ordered pair summary
d = u - v
if d < 0 {
  d = 0 - d
}
hi = u
lo = v
if v > u {
  hi = v
  lo = u
}
mid = hi - d
print d
print hi
print lo
print mid
print hi + lo
""",
    ["u", "v"],
    [
        m("gt_a", u=9, v=2),
        m("gt_b", u=15, v=11),
        m("gt_c", u=3, v=0),
        m("gt_d", u=40, v=17),
        m("lt_a", u=2, v=9),
        m("lt_b", u=5, v=6),
        m("lt_c", u=0, v=13),
        m("lt_d", u=11, v=30),
        m("eq_a", u=4, v=4),
        m("eq_b", u=0, v=0),
        m("eq_c", u=21, v=21),
        m("neg_a", u=-5, v=3),
        m("neg_b", u=4, v=-9),
        m("neg_c", u=-7, v=-2),
        m("neg_d", u=-6, v=-6),
        m("big_a", u=100, v=58),
    ],
)

fixture(
    "clamp_chain",
    [],
    """
# chained clamping into a band
x2 = raw * 2
if x2 < floor {
  x2 = floor
}
if x2 > roof {
  x2 = roof
}
span = roof - floor
slack = roof - x2
print x2
print span
print slack
print x2 + span
""",
    ["raw", "floor", "roof"],
    [
        m("in_a", raw=10, floor=5, roof=40),
        m("in_b", raw=7, floor=2, roof=30),
        m("in_c", raw=3, floor=6, roof=50),
        m("lo_a", raw=1, floor=9, roof=33),
        m("lo_b", raw=0, floor=4, roof=12),
        m("lo_c", raw=-6, floor=0, roof=25),
        m("hi_a", raw=30, floor=5, roof=41),
        m("hi_b", raw=22, floor=1, roof=19),
        m("hi_c", raw=50, floor=10, roof=77),
        m("edge_lo", raw=3, floor=6, roof=20),
        m("edge_hi", raw=10, floor=2, roof=20),
        m("tight_a", raw=8, floor=16, roof=16),
        m("wide_a", raw=14, floor=0, roof=100),
        m("neg_a", raw=-3, floor=-10, roof=10),
        m("neg_b", raw=-9, floor=-30, roof=-5),
        m("mid_a", raw=6, floor=11, roof=13),
    ],
)

fixture(
    "loop_sum",
    [],
    """
# strided series with a running parity check
total = 0
flips = 0
i = 1
while i <= n {
  total = total + i * step
  if total % 2 == 1 {
    flips = flips + 1
  }
  i = i + 1
}
print total
print flips
print total % 10
""",
    ["n", "step"],
    [
        m("a", n=1, step=1),
        m("b", n=2, step=3),
        m("c", n=3, step=1),
        m("d", n=4, step=2),
        m("e", n=5, step=3),
        m("f", n=0, step=7),
        m("g", n=6, step=1),
        m("h", n=7, step=5),
        m("i", n=3, step=0),
        m("j", n=8, step=2),
        m("k", n=9, step=3),
        m("l", n=2, step=11),
        m("m", n=10, step=1),
        m("n", n=4, step=9),
        m("o", n=5, step=4),
        m("p", n=1, step=13),
    ],
)

fixture(
    "loop_power",
    [],
    """
# bounded repeated doubling
value = seed
count = 0
while count < reps {
  value = value * 2
  count = count + 1
}
over = 0
if value > limit {
  over = value - limit
  value = limit
}
print value
print count
print over
""",
    ["seed", "reps", "limit"],
    [
        m("a", seed=1, reps=3, limit=100),
        m("b", seed=2, reps=4, limit=100),
        m("c", seed=3, reps=0, limit=50),
        m("d", seed=5, reps=2, limit=18),
        m("e", seed=1, reps=6, limit=60),
        m("f", seed=7, reps=1, limit=14),
        m("g", seed=4, reps=3, limit=32),
        m("h", seed=9, reps=2, limit=100),
        m("i", seed=6, reps=0, limit=5),
        m("j", seed=2, reps=5, limit=64),
        m("k", seed=3, reps=3, limit=23),
        m("l", seed=8, reps=2, limit=33),
        m("m", seed=1, reps=0, limit=1),
        m("n", seed=10, reps=4, limit=200),
        m("o", seed=5, reps=5, limit=157),
    ],
)

fixture(
    "gcd_steps",
    [],
    """
# gcd by repeated subtraction, with a step counter
a1 = a
b1 = b
steps = 0
while a1 != b1 {
  if a1 > b1 {
    a1 = a1 - b1
  } else {
    b1 = b1 - a1
  }
  steps = steps + 1
}
print a1
print steps
print a1 * 2
""",
    ["a", "b"],
    [
        m("a", a=12, b=8),
        m("b", a=9, b=3),
        m("c", a=7, b=7),
        m("d", a=5, b=11),
        m("e", a=21, b=14),
        m("f", a=1, b=1),
        m("g", a=18, b=4),
        m("h", a=6, b=15),
        m("i", a=25, b=10),
        m("j", a=3, b=8),
        m("k", a=30, b=18),
        m("l", a=2, b=9),
        m("m", a=16, b=16),
        m("n", a=13, b=5),
        m("o", a=24, b=9),
        m("p", a=10, b=35),
    ],
)

fixture(
    "digits_fold",
    [],
    """
# fold decimal digits into a weighted checksum
rest = num
acc = 0
count = 0
while rest > 0 {
  digit = rest % 10
  acc = acc + digit * 3
  rest = rest / 10
  count = count + 1
}
print acc
print count
print acc % 9
""",
    ["num"],
    [
        m("a", num=5),
        m("b", num=23),
        m("c", num=407),
        m("d", num=999),
        m("e", num=0),
        m("f", num=10),
        m("g", num=88),
        m("h", num=1234),
        m("i", num=705),
        m("j", num=56),
        m("k", num=3),
        m("l", num=640),
        m("m", num=8021),
        m("n", num=77),
        m("o", num=19),
    ],
)

fixture(
    "tri_max",
    [],
    """
# largest of three with tie reporting
best = p1
if p2 > best {
  best = p2
}
if p3 > best {
  best = p3
}
ties = 0
if p1 == best {
  ties = ties + 1
}
if p2 == best {
  ties = ties + 1
}
if p3 == best {
  ties = ties + 1
}
print best
print ties
print best - p1
""",
    ["p1", "p2", "p3"],
    [
        m("a", p1=3, p2=7, p3=5),
        m("b", p1=9, p2=2, p3=4),
        m("c", p1=1, p2=6, p3=8),
        m("d", p1=5, p2=5, p3=2),
        m("e", p1=4, p2=9, p3=9),
        m("f", p1=7, p2=7, p3=7),
        m("g", p1=0, p2=0, p3=3),
        m("h", p1=12, p2=1, p3=12),
        m("i", p1=2, p2=10, p3=6),
        m("j", p1=8, p2=3, p3=1),
        m("k", p1=-4, p2=-9, p3=-2),
        m("l", p1=0, p2=-1, p3=-1),
        m("m", p1=15, p2=20, p3=11),
        m("n", p1=6, p2=6, p3=9),
        m("o", p1=30, p2=25, p3=30),
    ],
)


# Test-only fixtures: small subjects for exhaustive slicing checks and the
# two curated repair scenarios.
TEST_FIXTURES: dict[str, tuple[str, list[str], list[tuple[str, dict]]]] = {
    "mini_double": (
        """
x = in1
y = x * 2
z = 99
print y
""",
        ["in1"],
        [m("a", in1=3), m("b", in1=-4), m("c", in1=0), m("d", in1=11)],
    ),
    "mini_branch": (
        """
if in1 > 0 {
  v = in1 * 3
} else {
  v = 0 - in1
}
print v
print v + 1
""",
        ["in1"],
        [m("a", in1=2), m("b", in1=0), m("c", in1=-5), m("d", in1=1), m("e", in1=-1)],
    ),
    "mini_loop": (
        """
s = 0
i = 0
while i < n {
  s = s + 2
  i = i + 1
}
print s
""",
        ["n"],
        [m("a", n=0), m("b", n=1), m("c", n=3), m("d", n=5)],
    ),
    "donor_deleted": (
        """
# route the adjusted fee to the output
good = adj + 1
out = good
print out
print out * 3
""",
        ["adj", "base"],
        [
            m("a", adj=4, base=2),
            m("b", adj=9, base=3),
            m("c", adj=1, base=8),
            m("d", adj=6, base=7),
            m("e", adj=0, base=5),
            m("f", adj=12, base=13),
        ],
    ),
    "audit_trap": (
        """
# gate: only mode one may print the reading
if mode == 1 {
  r = x + y
  print r
}
if mode == 2 {
  z1 = aux * 2
  print z1
}
""",
        ["mode", "x", "y", "aux"],
        [
            m("m1_a", mode=1, x=3, y=4),
            m("m1_b", mode=1, x=8, y=1),
            m("m1_c", mode=1, x=0, y=6),
            m("m2_a", mode=2, aux=5),
            m("m2_b", mode=2, aux=2),
            m("m2_c", mode=2, aux=9),
            m("m0_a", mode=0),
            m("m0_b", mode=0, x=7, y=7, aux=4),
        ],
    ),
}


def build_tests(source: str, variables: list[str], grid: list[tuple[str, dict]],
                where: str) -> list[dict]:
    program = parse(source, where)
    records = []
    seen = set()
    for name, inputs in grid:
        assert name not in seen, f"{where}: duplicate test {name}"
        seen.add(name)
        unknown = set(inputs) - set(variables)
        assert not unknown, f"{where}/{name}: unknown inputs {unknown}"
        bound = {var: 0 for var in variables}
        bound.update(inputs)
        result = run(program, bound)
        assert result.status is RunStatus.OK, f"{where}/{name}: {result.status}"
        records.append(
            {"name": name, "inputs": bound, "expected_output": list(result.printed)}
        )
    return records


def write_fixture(base: Path, name: str, source: str, tests: list[dict]) -> None:
    directory = base / name
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "program.mini").write_text(source + "\n", encoding="utf-8")
    (directory / "tests.json").write_text(
        json.dumps(tests, indent=2) + "\n", encoding="utf-8"
    )


def main() -> None:
    corpus_dir = ROOT / "corpus"
    meta = {"fixtures": {}}
    for name, (tags, source, variables, grid) in CORPUS.items():
        tests = build_tests(source, variables, grid, name)
        assert len(tests) >= 15, f"{name}: only {len(tests)} tests"
        lines = source.count("\n") + 1
        assert 20 <= lines <= 60, f"{name}: {lines} lines"
        write_fixture(corpus_dir, name, source, tests)
        meta["fixtures"][name] = {"tags": tags, "lines": lines, "tests": len(tests)}
    (corpus_dir / "corpus.json").write_text(
        json.dumps(meta, indent=2) + "\n", encoding="utf-8"
    )

    fixtures_dir = ROOT / "tests" / "fixtures"
    for name, (source, variables, grid) in TEST_FIXTURES.items():
        source = source.strip("\n")
        tests = build_tests(source, variables, grid, name)
        write_fixture(fixtures_dir, name, source, tests)

    print(f"wrote {len(CORPUS)} corpus fixtures and {len(TEST_FIXTURES)} test fixtures")


if __name__ == "__main__":
    main()
