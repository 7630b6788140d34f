"""From balls in boxes to divisors over Q(T).

The soliton lengths and gaps of a box-ball state give a tropical Toda state;
lifting it with powers of T gives a Toda state over Q(T), whose flow moves the
eigenvector divisor by D up to the cyclic group generated by G.

Run:  python demos/boxball_to_jacobian.py [cells] [steps]
"""

import sys

from todagauss import (BoxBallState, bbs_step, eta, t_lift, toda_step, tropical_step,
                       tropicalize, verify_bbs_diagram)

cells = sys.argv[1] if len(sys.argv) > 1 else "11010010000000"
steps = int(sys.argv[2]) if len(sys.argv) > 2 else 4

b = BoxBallState.parse(cells)
print("box-ball evolution")
state = b
for t in range(steps + 1):
    trop = eta(state).representative
    print(f"  t={t}  {state}   Q={trop.Q} W={trop.W}")
    state = bbs_step(state)

x = eta(b).representative
y = t_lift(x)
print("\nlifted state  I =", y.I)
print("              V =", y.V)
y1 = toda_step(y)
print("one Toda step, valuations:", tropicalize(y1), " tropical step:", tropical_step(x))

rec = verify_bbs_diagram(b, min(steps, 2))
for check in rec.checks:
    extra = check.get("detail", "")
    print(f"  {check['id']:<22} {'ok' if check['ok'] else 'FAILED'} {extra}")
print("status:", rec.status)
