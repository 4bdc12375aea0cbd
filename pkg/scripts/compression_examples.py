#!/usr/bin/env python3
"""Run the compression algorithms on the standard worked examples and print traces."""
import json

from sumsetlab import compress_full, compress_tail, make_set, short_form_split, sumset_size

h = 4
print("tail family {0,1,3,20,b}, h=4")
for b in (200, 120, 81, 80):
    print(f"  b={b:3d}  |4A|={sumset_size(make_set([0, 1, 3, 20, b]), h)}")
print("  compress_tail(200) ->", compress_tail(make_set([0, 1, 3, 20, 200]), h))

print("interior family {0,1,3,20-c,81-c}, h=4")
for c in range(10):
    print(f"  c={c}  |4A|={sumset_size(make_set([0, 1, 3, 20 - c, 81 - c]), h)}")

A = make_set([0, 2, 7, 11, 70, 85, 91])
final, trace = compress_full(A, 3)
print("gap compression, h=3")
print(" ", json.dumps(trace.to_json()))
print("  split index r =", short_form_split(final, 3))
