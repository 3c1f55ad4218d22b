"""Prime powers forced into denominators, and what coprimality buys.

Run: python3 demos/04_sylvester_and_coprime.py
"""

from recipsum import (FinSet, delta, nu_collision_scan, prime_hunter, quadruple_scan,
                      sylvester_powers, verify_theorem_1_2)

X = FinSet.interval(1000, 1004)
powers = sorted(sylvester_powers(X))
print(f"sylvester powers of {X}: {', '.join(map(str, powers))}")
print("each exactly divides the denominator:",
      all(delta(X) % sp.value == 0 and delta(X) % (sp.value * sp.p) for sp in powers))

print("intervals sharing their sylvester powers, up to 25:", quadruple_scan(25).findings)

rep = verify_theorem_1_2([2, 3, 5, 7, 11, 13])
print(f"coprime ground without 1: {rep.subsets} subsets, "
      f"{len(rep.delta_collisions)} denominator collisions")
rep = verify_theorem_1_2([1, 2, 3, 5, 7])
a, b = rep.delta_collisions[0][:2]
print(f"with 1 added, {a} and {b} share a denominator "
      f"({len(rep.delta_collisions)} such pairs)")

for c in nu_collision_scan([2, 3, 5, 7, 11, 13], 2).collisions:
    print(f"numerator collision: {c.set_a} and {c.set_b} both give {c.nu}")
hunt = prime_hunter([2, 3], [2, 1])
print(f"1/4 + 1/3 has numerator {hunt.nu}, new primes {hunt.new_primes}")
