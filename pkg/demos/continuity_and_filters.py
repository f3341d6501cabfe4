"""Continuity of a correspondence on a set, read two ways."""

from fibra import (
    Correspondence,
    all_topologies,
    discrete,
    image,
    is_continuous,
    is_continuous_at_every_point,
    is_continuous_on,
    limit_characterization,
    neighborhood_filter,
)
from fibra.topology import FiniteTopology

print("topologies on 0..3 points:", [len(all_topologies(range(n))) for n in range(4)])

sierpinski = FiniteTopology(["0", "1"], [[], ["1"], ["0", "1"]])
target = discrete(["a", "b"])
phi = Correspondence(sierpinski.points, target.points, [("0", "a"), ("1", "a"), ("1", "b")])

# 0 only sees the whole space, which spreads over both targets
for c in (["0"], ["1"], ["0", "1"]):
    nf = neighborhood_filter(sierpinski, c)
    on = is_continuous_on(phi, sierpinski, target, c)
    lim = limit_characterization(phi, nf, target, image(phi, c))
    print(f"A={c}: continuous on A={on}, phi(A) is a limit along N(A)={lim}")

print("literal global continuity:", is_continuous(phi, sierpinski, target))
print("pointwise everywhere:", is_continuous_at_every_point(phi, sierpinski, target))

# flip the source topology and the picture at 0 changes
other = FiniteTopology(["0", "1"], [[], ["0"], ["0", "1"]])
print("with {0} open, continuous on {0}:", is_continuous_on(phi, other, target, ["0"]))
