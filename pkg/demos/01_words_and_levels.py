"""Words in the two maps n -> n+1 and n -> n(n+1), and the sets they build.

Run: python3 demos/01_words_and_levels.py
"""

from recipsum import Word, apply, level_multiset, preimages, sigma

w = Word.parse("dssddd")
print(f"{w.pretty()} sends 1 to {apply(w, 1)}")

# every level over b is a set of 2^k integers whose reciprocals add to 1/b
for k in range(4):
    lvl = level_multiset(k, 2)
    print(f"level {k} over 2: {list(lvl.values)}  sum of reciprocals = {sigma(lvl.values)}")

# one value, several words, but never two of the same length
for n in (6, 42, 421):
    ws = preimages(2, n)
    shown = ", ".join(f"{x.pretty()} ({len(x)})" for x in ws[:4])
    print(f"{n}: {len(ws)} words, lengths {sorted(len(x) for x in ws)[:8]}...; shortest: {shown}")
