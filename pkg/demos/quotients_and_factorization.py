"""Dividing a bundle by a fibered equivalence and splitting a morphism through it."""

from fibra import Bundle, FiberedMorphism, ReducedFiberedCorrespondence, factorize, generate_topology, quotient_bundle

base_top = generate_topology(["m"], [])
E = Bundle(["m"], {"m": [0, 1, 2, 3]}, name="E", base_topology=base_top,
           total_topology=generate_topology([("m", i) for i in range(4)], [{("m", 0)}, {("m", 0), ("m", 2)}, {("m", 1)}]))
parity = ReducedFiberedCorrespondence(E, E, {"m": [(a, b) for a in range(4) for b in range(4) if a % 2 == b % 2]})

q = quotient_bundle(E, parity)
print("classes:", {k: sorted(v) for k, v in q.class_map["m"].items()})
print("natural map:", dict(q.nat.maps["m"]))
# {0} is open but not saturated, so it does not survive; {0, 2} does
print("quotient opens:", sorted(sorted(u) for u in q.quotient_topology.opens))

B = Bundle(["m"], {"m": ["u", "v", "w"]}, name="B")
f = FiberedMorphism(E, B, {"m": {0: "u", 1: "u", 2: "v", 3: "v"}})
fac = factorize(f)
print("j:", dict(fac.j.maps["m"]))
print("t:", dict(fac.t.maps["m"]), "bijective:", fac.t.is_bijective())
print("i:", dict(fac.i.maps["m"]), "injective:", fac.i.is_injective())
print("i∘t∘j == f:", fac.j.then(fac.t).then(fac.i) == f)
