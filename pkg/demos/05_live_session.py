"""Drive a live testing session against a simulated black box.

The box secretly runs one of the rover candidates; the session engine
tracks which candidates remain consistent, recommends the next test, and
stops the moment a verdict is forced.  The transcript shows the whole
interaction for every possible secret implementation.

Run:  python demos/05_live_session.py
"""

import random

from adaptest import builtin_cas, create_session, feasibility, observe, recommend
from adaptest.session import SessionStatus

cas = builtin_cas()


def run_session(secret_name: str, rng: random.Random) -> int:
    secret = cas.by_name[secret_name]
    state = create_session(cas)
    print(f"--- black box secretly runs {secret_name} "
          f"({'correct' if secret_name in cas.correct else 'incorrect'}) ---")
    while state.status is SessionStatus.RUNNING:
        advice = recommend(state, mode="exact")
        pick = advice.ranked[0]
        remaining = feasibility(state)
        print(f"  {len(state.consistent)} candidates left, "
              f"worst case {remaining} more tests; applying '{pick.input}'")
        reply = rng.choice(sorted(secret.table[pick.input]))
        state = observe(state, pick.input, reply)
        print(f"    box replied '{reply}'")
    survivors = ",".join(sorted(state.consistent))
    print(f"  verdict: {state.status.value.upper()} after {len(state.history)} tests"
          f" (still possible: {{{survivors}}})")
    return len(state.history)


rng = random.Random(4)
worst = 0
for name in cas.function_names:
    worst = max(worst, run_session(name, rng))
print(f"\nworst case over all thirteen secret implementations: {worst} tests")
assert worst == 2
