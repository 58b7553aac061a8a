"""Permutohedral fans of the moduli spaces L_B and their torus-orbit counts.

Cones are indexed by ordered partitions of the label set B; the fan is smooth
and complete, with |B|! maximal cones, and the orbit count is an Eulerian
polynomial.
"""

from f1geom.toric_moduli import (
    build_fan,
    fan_checks,
    fiber_chain,
    forgetful_map,
    orbit_count_poly,
    parse_partition,
)

for labels in ("a", "ab", "abc", "abcd", "abcde"):
    fan = build_fan(labels)
    report = fan_checks(fan, samples=2000, seed=0)
    print(f"|B| = {len(labels)}: {len(fan.cones):4d} cones, {report.maximal_cones:4d} maximal, "
          f"smooth={report.smooth}, complete={report.complete}, count = {orbit_count_poly(fan).format()}")

print()
print(build_fan("abc").format())

tau = parse_partition("[{a},{c},{b}]")
print()
print("forget c:", tau.format(), "->", forgetful_map("abc", "ab").partition(tau).format())
chain = fiber_chain(parse_partition("[{a},{b},{c}]"), "x")
print("fiber over [{a},{b},{c}] is a chain of", chain.length, "lines:",
      ", ".join(s.format() for s in chain.component_strata))
