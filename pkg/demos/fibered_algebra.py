"""Composing fibered correspondences and classifying fibered relations."""

from fibra import (
    Bundle,
    FiberedCorrespondence,
    ReducedFiberedCorrespondence,
    classify,
    fibered_compose,
    fibered_inverse,
    lift_of_diagonal,
    reduced_compose,
    reduced_diagonal,
    relation_counterexample,
    sections_correspondence,
)

A = Bundle(["m"], {"m": ["a"]}, name="A")
B = Bundle(["n"], {"n": ["b0", "b1"]}, name="B")
C = Bundle(["p"], {"p": ["c"]}, name="C")

f = FiberedCorrespondence(A, B, [("m", "n")], {("m", "n"): [("a", "b0"), ("a", "b1")]})
h = FiberedCorrespondence(B, C, [("n", "p")], {("n", "p"): [("b1", "c")]})

hf = fibered_compose(h, f)
print("h∘f base:", sorted(hf.base.pairs), "fiber:", sorted(hf.fibers[("m", "p")]))
print("f⁻¹ fiber:", sorted(fibered_inverse(f).fibers[("n", "m")]))

# one bundle, two points, and relations living in each fiber
E = Bundle(["m0", "m1"], {"m0": [0, 1, 2], "m1": [0, 1, 2]}, name="E")
le = ReducedFiberedCorrespondence(E, E, {x: [(i, j) for i in range(3) for j in range(3) if i <= j] for x in E.base})
parity = ReducedFiberedCorrespondence(E, E, {x: [(i, j) for i in range(3) for j in range(3) if i % 2 == j % 2] for x in E.base})
step = ReducedFiberedCorrespondence(E, E, {"m0": [(0, 1), (1, 2)], "m1": []})

for name, r in [("diagonal", reduced_diagonal(E)), ("<=", le), ("parity", parity), ("step", step)]:
    print(f"{name:>8}: {','.join(classify(r))}")
print("step is not transitive because of", relation_counterexample(step, "transitive"))

both = reduced_compose(parity, le)
print("parity∘<= over m0:", sorted(both.fibers["m0"]))
print("lifted to the diagonal base:", sorted(lift_of_diagonal(both).base.pairs))

small = Bundle(["m0", "m1"], {"m0": ["a", "b"], "m1": ["a", "b"]})
partial = ReducedFiberedCorrespondence(small, small, {"m0": [("a", "a")], "m1": [("a", "a"), ("b", "b")]})
pairs = sections_correspondence(partial).pairs
print("section pairs:", sorted(tuple(sorted(s.assignment.items())) for s, _ in pairs))
