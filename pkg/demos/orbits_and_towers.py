"""A Z2 action with a fixed point, its little groups and the orbit tower."""

from fibra import (
    Bundle,
    FiberedGroup,
    Section,
    TstarRepresentation,
    cyclic_group,
    is_free,
    little_group,
    orbit_quotient,
    stabilizer,
    tower_project,
    tower_validate,
)

Z2 = cyclic_group(2)
E = Bundle(["r", "s"], {"r": ["p", "q"], "s": ["o"]}, name="E")
swap = {("g0", "p"): "p", ("g0", "q"): "q", ("g1", "p"): "q", ("g1", "q"): "p"}
fix = {("g0", "o"): "o", ("g1", "o"): "o"}
rep = TstarRepresentation(FiberedGroup(E.base, Z2), E, {"r": swap, "s": fix})

print("stabilizer of p over r:", sorted(stabilizer(rep, "r", "p")))
print("stabilizer of o over s:", sorted(stabilizer(rep, "s", "o")))
print("free:", is_free(rep))

h = Section(E, {"r": "p", "s": "o"})
for g in sorted(little_group(rep, h), key=lambda s: sorted(s.assignment.items())):
    print("little group element:", dict(sorted(g.assignment.items())))

oq = orbit_quotient(rep)
print("degenerate classes:", sorted(oq.degenerate))
print("orbit bijections:", {k: dict(v) for k, v in oq.bijections.items()})
print("tower:", tower_validate(oq.level2))
print("down to the base:", tower_project(oq.level2, 2, 0))
