"""Many pairwise disjoint sets sharing one reciprocal sum.

Run: python3 demos/02_decomposition.py
"""

from itertools import combinations

from recipsum import RationalTarget, assemble_theorem1, sigma

target = RationalTarget(3, 5)
dec = assemble_theorem1(target, 4)
print(f"four disjoint sets, each summing to {target.value}:")
for i, block in enumerate(dec.blocks, 1):
    shown = str(block) if len(block) < 12 else f"{len(block)} elements, largest has {len(str(block.max()))} digits"
    print(f"  block {i}: {shown}; sigma = {sigma(block)}")
overlap = any(set(a) & set(b) for a, b in combinations(dec.blocks, 2))
print("blocks overlap:", overlap)
