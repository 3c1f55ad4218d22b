"""Prime exponents along b, b(b+1), ... settle once a prime appears.

Run: python3 demos/05_star_orbits.py
"""

from recipsum import exponent_profile, star_orbit

print("orbit of 2:", star_orbit(2, 4))
for b in (2, 3, 5):
    prof = exponent_profile(b, 6)
    print(f"b={b}: first ten exponents {prof.s_vector(10)}, "
          f"{len(prof.entries)} primes seen, verified through depth {prof.verified_through}")
