"""Repeatedly split the least replaceable x into x+1 and x(x+1).

The sum of reciprocals never changes; the minimum slowly climbs.

Run: python3 demos/03_replacement_sequence.py
"""

from recipsum import disjoint_subsequence, run, sigma

trace = run({2}, 60)
for state in trace.states[:7]:
    print(f"A{state.index}: {state.elements}")
print("first index where the minimum reaches each value:", trace.first_index_of_min)
print("sigma of the last term:", sigma(trace.states[-1].elements))

sub = disjoint_subsequence({2}, 30)
print("greedy indices with pairwise disjoint terms:", sub.indices)
