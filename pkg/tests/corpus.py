"""Valid netlist documents for round-trip tests."""
import math
import random

HANDWRITTEN = [
    "",
    "# only a comment\n\n",
    "[site] name=q1 omega=5.2e9\n[site] name=q2 omega=5.2e9\n[coupling] from=q1 to=q2 J=1.0e7",
    "[ladder] N=8 td=1.0 tv=0.0 phi=1.5707963 boundary=open",
    "[meta] version=1\n[ladder] N=64 td=1 tv=3 phi=1.5707963267948966 boundary=periodic",
    "[site] name=a EJ=2.0e-23 C=8.0e-14\n[site] name=b EJ=2.5e-23 EC=2.0e-24\n"
    "[coupling] from=a to=b LJ=3.0e-8\n[modulation] site=a omega_M=1.0e9 eJ=1.0e-24 phase=0",
    "[site] name=m0 omega=4e9\n[site] name=m1 omega=5e9\n[pump] freq=1e9 tol=1e6 phase=0.25 g0=3.0e5",
    "  [site]\tname=x  omega=+1.5E+3   \r\n",
]


def _number(rng):
    kind = rng.randrange(4)
    if kind == 0:
        return str(rng.randint(-1000, 1000))
    if kind == 1:
        return repr(rng.uniform(-10, 10))
    if kind == 2:
        return f"{rng.uniform(0.1, 9.9):.3f}e{rng.randint(-30, 30)}"
    return f"{rng.choice(['', '+', '-'])}.{rng.randint(0, 999)}"


def _ident(rng):
    first = rng.choice("abcdefghijklmnopqrstuvwxyzABCXYZ_")
    rest = "".join(rng.choice("abcxyz019_") for _ in range(rng.randint(0, 6)))
    return first + rest


def generated(count, seed=0):
    """Syntactically valid documents with random kinds, keys and spacing."""
    rng = random.Random(seed)
    kinds = ["site", "coupling", "modulation", "ladder", "pump", "meta"]
    docs = []
    for _ in range(count):
        lines = []
        for _ in range(rng.randint(0, 8)):
            roll = rng.random()
            if roll < 0.1:
                lines.append(" " * rng.randint(0, 3) + "# " + _ident(rng))
                continue
            if roll < 0.15:
                lines.append("")
                continue
            keys = rng.sample(["name", "omega", "J", "from", "to", "td", "tv", "phi", "N", "x_1", "K"], rng.randint(0, 5))
            pairs = [f"{k}={_number(rng) if rng.random() < 0.6 else _ident(rng)}" for k in keys]
            sep = lambda: rng.choice([" ", "  ", "\t", " \t "])
            line = " " * rng.randint(0, 2) + f"[{rng.choice(kinds)}]"
            for p in pairs:
                line += sep() + p
            lines.append(line + rng.choice(["", " ", "\t"]))
        docs.append(rng.choice(["\n", "\r\n"]).join(lines))
    return docs


def corpus():
    docs = HANDWRITTEN + generated(50 - len(HANDWRITTEN), seed=7)
    assert len(docs) == 50
    return docs
