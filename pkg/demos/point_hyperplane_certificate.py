"""The point-hyperplane code over F_2 (n=2) is not minimal: an explicit certificate.

For a failing codeword c we exhibit a codeword c' that is not a multiple of c
with supp(c') strictly inside supp(c), then show the matching arising
hyperplane has a disconnected complement in the flag geometry.

Run: python demos/point_hyperplane_certificate.py
"""

from itertools import product

import numpy as np

from embcodes.codes import is_minimal_code, zero_columns
from embcodes.families import GeometryDescriptor, build
from embcodes.geometry import complement_connected, is_geometric_hyperplane

b = build(GeometryDescriptor.make("point_hyperplane", 2, n=2))
code = b.code
res = is_minimal_code(code)
print(f"[N={code.N}, K={code.K}] minimal={res.minimal}  failing classes={res.non_minimal_classes}"
      f" of {res.classes}  witness={res.witness}")

words = {m: code.encode(m) for m in product(range(2), repeat=code.K) if any(m)}
c = words[res.witness]
supp = set(np.flatnonzero(c))
inner = next(m for m, w in words.items() if set(np.flatnonzero(w)) < supp)
print(f"wt(c) = {len(supp)}, contained word {inner} has weight {np.count_nonzero(words[inner])}")

# columns are the flags, so the zero set of c is the arising hyperplane
pre = zero_columns(code, res.witness).tolist()
print(f"preimage of the witness hyperplane: {len(pre)} flags, geometric hyperplane="
      f"{is_geometric_hyperplane(b.geometry, pre)}, complement connected={complement_connected(b.geometry, pre)}")
