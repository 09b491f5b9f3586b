"""The coin-guessing machine, worked end to end.

A machine flips a fair coin internally; the user guesses by pressing h or t
and a prize p follows a correct guess.  Whether the machine flips before or
after the button press is internal, so no interaction should tell the two
variants apart, and a guessing user should win exactly half the time.

Run:  python3 demos/coin_machine.py
"""

from probproc import (
    apply_test,
    bounded_testing_equivalent,
    compile_term,
    menu_distribution,
    parse_term,
    parse_test,
    ready_trace_equivalent,
    to_dot,
)
from probproc.fixtures import (
    COIN_MACHINE_EARLY,
    COIN_MACHINE_LATE,
    COIN_PROBE_TEST,
    COIN_USER_TEST,
)

early = compile_term(parse_term(COIN_MACHINE_EARLY))
late = compile_term(parse_term(COIN_MACHINE_LATE))

print("machine (flip first):  ", COIN_MACHINE_EARLY)
print("machine (press first): ", COIN_MACHINE_LATE)
print()

print("Initial menus and their probabilities:")
for menu, p in sorted(menu_distribution(early).items()):
    print(f"  {{{','.join(sorted(menu))}}} with probability {p}")
print()

user = compile_term(parse_test(COIN_USER_TEST))
print(f"Outcome of the guessing user {COIN_USER_TEST!r}:")
print(f"  flip-first machine:  {apply_test(early, user)}")
print(f"  press-first machine: {apply_test(late, user)}")
print()

probe = compile_term(parse_test(COIN_PROBE_TEST))
print(f"Outcome of the one-sided probe {COIN_PROBE_TEST!r}:")
print(f"  flip-first machine:  {apply_test(early, probe)}")
print(f"  press-first machine: {apply_test(late, probe)}")
print()

print("Are the two machines equivalent?")
print(f"  by observation probabilities: {ready_trace_equivalent(early, late).describe()}")
print(f"  by all tests up to depth 3:    {bounded_testing_equivalent(early, late, depth=3).describe()}")
print()

print("GraphViz rendering of the flip-first machine:")
print(to_dot(early, title="coin machine"))
