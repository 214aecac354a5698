"""Classify two-bridge fractions: fibered or virtually fibered.

A two-bridge complement is fibered exactly when some fraction in its
Schubert class has a continued fraction expansion with all partial
quotients +-2; otherwise its complement is still virtually fibered,
because the degree-2q great circle link cover is fibered.  The search
runs in exact rational arithmetic and is checked against a blind
enumeration of all expansion values.
"""

import math

from gclink import TwoBridgeFraction, equivalence_class, find_pm2_expansion, twobridge_verdict
from gclink.twobridge import Pm2ValueTable, blind_pm2_expansion

for text in ("2/5", "1/3", "1/7", "3/7", "12/17"):
    f = TwoBridgeFraction.parse(text)
    cls = sorted(str(m) for m in equivalence_class(f))
    v = twobridge_verdict(f, include_certificate=False)
    print(f"{text}  class {{{', '.join(cls)}}}  ->  {v.status.value}")
    if v.expansion is not None:
        print(f"         witness: {v.expansion} = {v.expansion.value()}")
    else:
        print(f"         cover: {v.cover_name}, degree {v.cover_degree}")

print("\nhow common is fiberedness among two-bridge knots with q <= 45?")
table = Pm2ValueTable(20)
fibered = total = 0
for q in range(3, 46, 2):
    for p in range(1, q):
        if math.gcd(p, q) != 1:
            continue
        total += 1
        if find_pm2_expansion(TwoBridgeFraction(p, q)) is not None:
            fibered += 1
print(f"  fibered: {fibered} of {total} fractions")

f = TwoBridgeFraction(3, 7)
assert find_pm2_expansion(f) is None
assert blind_pm2_expansion(f, 16, table) is None
print("\n3/7 has no expansion (pruned search and blind enumeration agree)")
