"""Item records for verification reports.

Every checked identity becomes one JSON-ready dict::

    {suite, k, item_id, status, lhs, rhs, witness, seed}

plus optional ``orientation`` and ``note`` keys.  Failures are data here;
nothing in this module raises on a mismatch.
"""

from __future__ import annotations

import random

PASS = "pass"
PASS_SIGN_FLIP = "pass_sign_flip"
FAIL = "fail"
SKIPPED = "skipped"
STATUSES = (PASS, PASS_SIGN_FLIP, FAIL, SKIPPED)

AS_STATED = "as_stated"


def rng_for(seed: int, *tags) -> random.Random:
    """Independent deterministic stream per (seed, item)."""
    return random.Random(":".join([str(seed), *map(str, tags)]))


def text(x) -> str:
    return str(x)


def _difference(lhs, rhs):
    try:
        diff = lhs - rhs
    except Exception:
        return f"{text(lhs)} != {text(rhs)}"
    return text(diff)


def record(suite: str, k: int, item_id: str, status: str, lhs="", rhs="", witness="0",
           seed: int = 0, **extra) -> dict:
    out = {
        "suite": suite,
        "k": k,
        "item_id": item_id,
        "status": status,
        "lhs": text(lhs),
        "rhs": text(rhs),
        "witness": text(witness),
        "seed": seed,
    }
    out.update({key: v for key, v in extra.items() if v is not None})
    return out


def check(suite: str, k: int, item_id: str, lhs, rhs, seed: int = 0,
          alternatives=(), note: str | None = None) -> dict:
    """Compare two exact values.

    ``alternatives`` is a sequence of ``(orientation, lhs, rhs)`` tried in
    order when the statement fails as written; the first that holds gives
    status ``pass_sign_flip`` and is recorded as the orientation.
    """
    if lhs == rhs:
        return record(suite, k, item_id, PASS, lhs, rhs, "0", seed,
                      orientation=AS_STATED if alternatives else None, note=note)
    for orientation, alt_lhs, alt_rhs in alternatives:
        if alt_lhs == alt_rhs:
            return record(suite, k, item_id, PASS_SIGN_FLIP, alt_lhs, alt_rhs,
                          _difference(lhs, rhs), seed, orientation=orientation, note=note)
    return record(suite, k, item_id, FAIL, lhs, rhs, _difference(lhs, rhs), seed, note=note)


def check_true(suite: str, k: int, item_id: str, ok: bool, lhs="true", rhs="true",
               witness="", seed: int = 0, note: str | None = None) -> dict:
    return record(suite, k, item_id, PASS if ok else FAIL, lhs, rhs,
                  "0" if ok else witness, seed, note=note)


def skipped(suite: str, k: int, item_id: str, seed: int, reason: str) -> dict:
    return record(suite, k, item_id, SKIPPED, "", "", "", seed, note=reason)


def random_exponent(rng: random.Random, k: int, max_total: int, min_total: int = 0) -> tuple:
    total = rng.randint(min_total, max_total)
    e = [0] * k
    for _ in range(total):
        e[rng.randrange(k)] += 1
    return tuple(e)


def random_coefficient(rng: random.Random, bound: int = 3) -> int:
    return rng.choice([-1, 1]) * rng.randint(1, bound)
