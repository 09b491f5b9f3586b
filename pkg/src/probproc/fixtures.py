"""Small worked processes used by the demo scripts, the harness, and tests.

The coin machine flips a fair coin internally; a user presses h or t to
guess the outcome and a prize action p follows a correct guess.  The two
machine variants differ only in whether the flip happens before or after
the button press, which no observer can tell apart.
"""

from __future__ import annotations

# Flip first, then offer both buttons; the prize follows the matching button.
COIN_MACHINE_EARLY = "p{1/2:(h->p->0 [] t->0), 1/2:(h->0 [] t->p->0)}"

# Offer both buttons first, then flip.
COIN_MACHINE_LATE = "h->p{1/2:p->0, 1/2:0} [] t->p{1/2:0, 1/2:p->0}"

# The user as a test: press either button, collect the prize, succeed.
COIN_USER_TEST = "h->p->w [] t->p->w"

# A one-sided probe: succeed after h plus prize, or right after t.
COIN_PROBE_TEST = "h->p->w [] t->w"

# A pair of processes with equal menu probabilities that differ in what
# follows b; the trace offering {a,b}, choosing b, then seeing {c} tells
# them apart (probability 1/2 against 0).
MIXED_FOLLOWUP_FIRST = "p{1/2:(a->0 [] b->c->0), 1/2:(b->d->0 [] e->0)}"
MIXED_FOLLOWUP_SECOND = "p{1/2:(a->0 [] b->d->0), 1/2:(b->c->0 [] e->0)}"

# The probe test that separates the pair above.
MIXED_FOLLOWUP_PROBE = "a->w [] b->c->w"

# Four-way mixture whose conditional behavior after seeing menu {a,b} and
# choosing a is a 1/4 : 3/4 split between a c-step and a d-step.
MENU_CONDITIONING_EXAMPLE = (
    "p{1/8:(a->c->0 [] b->e->0), 3/8:(a->d->0 [] b->f->0),"
    " 1/4:(a->d->0 [] c->e->0), 1/4:(a->d->0 [] e->f->0)}"
)

# A coin tosser that writes, reveals, then shows the outcome, and a guesser
# who commits to a guess (g1 or g2) between the write and the reveal.  They
# synchronize on wrt, rev, head and tail; the guesses and the win report ok
# belong to the guesser alone.
GAME_TOSSER = "p{1/2: wrt->rev->head->0, 1/2: wrt->rev->tail->0}"
GAME_GUESSER = "wrt->(g1->rev->head->ok->0 [] g2->rev->tail->ok->0)"

# Prefix distributes over the internal coin: these two are equivalent even
# inside any composition, e.g. running alongside e->d->0.
PREFIX_DISTRIB_LEFT = "e->a->p{1/2:b, 1/2:c}"
PREFIX_DISTRIB_RIGHT = "e->p{1/2:a->b, 1/2:a->c}"
PREFIX_DISTRIB_PEER = "e->d->0"
