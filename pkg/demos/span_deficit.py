"""Hyperbolic dual polar space of rank 3 over F_2: 30 generators spanning 14 of 20 dimensions.

Run: python demos/span_deficit.py
"""

from embcodes.codes import weight_distribution
from embcodes.embeddings import validate_embedding
from embcodes.families import GeometryDescriptor, build
from embcodes.oracle import expected_parameters

desc = GeometryDescriptor.make("orthogonal_plus", 2, n=3, k=3)
b = build(desc)
rep = validate_embedding(b.geometry, b.system)
print(f"points={b.system.num_points}  ambient={b.system.ambient_dim}  span={rep.effective_dimension}"
      f"  line sizes={sorted(b.geometry.line_sizes())}")
dist = weight_distribution(b.code, "message_enum")
print(f"code: [N={b.code.N}, K={b.code.K}, d={dist.min_weight}]  spectrum={dist.counts}")
e = expected_parameters(desc)
print(f"stored claim: N={e.N.value}, K={e.K.value}, d={e.d.value}")
