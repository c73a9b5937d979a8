"""Re-deriving the weight-1 and sign-weight tables by diagram chase.

The higher-weight tables are not computed from chain complexes here;
instead a deduction engine replays the column-by-column induction through
the long exact sequence of the basic cofiber sequence.  Every step is
either pure exactness or a named, cited axiom, and each entry remembers the
trail of axioms it used.  Field structure enters through profiles: a
quadratically closed field collapses all square classes, a euclidean field
keeps exactly one.
"""

from bredon.formal import (
    LesWindow,
    PROFILES,
    ZERO_FG,
    FormalGroup,
    KSTAR,
    derive_weight1,
    derive_weight_sigma,
    solve_window,
)

print(__doc__)

print("A five-term window around multiplication by 2 on the units k*:")
window = LesWindow.build([
    ("0", ZERO_FG), (), ("X", None), (),
    ("U1", FormalGroup.of(KSTAR)), ("mult2:Kstar",),
    ("U2", FormalGroup.of(KSTAR)), (), ("Y", None), (), ("0", ZERO_FG)])
for name in ("general", "euclidean", "quadratically_closed"):
    sol = solve_window(window, PROFILES[name])
    print(f"  {name:22s} X = {sol.values['X']},  Y = {sol.values['Y']}")

print("\nWeight-1 negative cone over a formally real field (shift -4 column):")
neg = derive_weight1(PROFILES["formally_real"], 5)["negative"]
for a in range(0, 7):
    entry = neg.entry(a, -4)
    if not entry.group.is_zero():
        print(f"  (a={a}, p=-4)  {entry.group}   via {', '.join(entry.trail)}")

print("\nThe same column over a euclidean field (square classes become Z/2):")
neg_eu = derive_weight1(PROFILES["euclidean"], 5)["negative"]
for a in range(0, 7):
    entry = neg_eu.entry(a, -4)
    if not entry.group.is_zero():
        print(f"  (a={a}, p=-4)  {entry.group}")

print("\nSign-weight positive cone, euclidean, shifts 1..5 (nonzero entries):")
pos = derive_weight_sigma(PROFILES["euclidean"], 6)["positive"]
for p in range(1, 6):
    row = {a: str(pos.entry(a, p).group) for a in range(-6, 3)
           if not pos.entry(a, p).group.is_zero()}
    print(f"  shift {p}: {row}")

print("\nMod-2 tables come from the split universal-coefficient sequence:")
pos2 = derive_weight_sigma(PROFILES["euclidean"], 6, coeff=2)["positive"]
for p in (3, 4):
    row = {a: str(pos2.entry(a, p).group) for a in range(-6, 3)
           if pos2.entry(a, p).group and not pos2.entry(a, p).group.is_zero()}
    print(f"  shift {p}: {row}")

print("\nA profile outside a theorem's hypotheses is reported, not guessed:")
tables = derive_weight1(PROFILES["formally_real"], 4)
for note in tables["positive"].notes[:2]:
    print(f"  note: {note}")
