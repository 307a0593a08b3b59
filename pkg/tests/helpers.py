"""Shared builders and a reference interleaving interpreter for the tests."""

import itertools

from weaktrace.events import MAIN, SHADOW, Event, Load, RegOp, Store
from weaktrace.expr import Lit, eval_arith

ACCEPTANCE_LINES: list[str] = []

X1 = Store("x", Lit(1))
Y1 = Store("y", Lit(1))
R1Y = Load("r1", "y")
R2X = Load("r2", "x")


def m(pid, eid, act):
    return Event(pid, eid, MAIN, act)


def s(pid, eid, act):
    return Event(pid, eid, SHADOW, act)


def dekker_events():
    """a, b, c, d and the shadows a', c' of the store-buffering program."""
    a, b = m(0, 0, X1), m(0, 1, R1Y)
    c, d = m(1, 0, Y1), m(1, 1, R2X)
    return a, b, c, d, s(0, 0, X1), s(1, 0, Y1)


def interleavings(seqs):
    """All merges of the given sequences preserving each one's order."""
    seqs = [list(q) for q in seqs]
    total = sum(map(len, seqs))
    owners = [i for i, q in enumerate(seqs) for _ in q]
    for order in set(itertools.permutations(owners, total)):
        pos = [0] * len(seqs)
        out = []
        for i in order:
            out.append((i, seqs[i][pos[i]]))
            pos[i] += 1
        yield out


def sc_reference_outcomes(litmus):
    """Final observations of a straight-line litmus test under plain interleaving.

    Written independently of the library's replay: one shared memory, one
    register file per processor, every action atomic.
    """
    programs = [[a.action for a in p.program] for p in litmus.procs]
    outcomes = set()
    for order in interleavings(programs):
        mem = dict(litmus.init)
        rf = [dict() for _ in programs]
        for pid, act in order:
            env = dict.fromkeys(("r0", "r1", "r2", "r3"), 0)
            env.update(rf[pid])
            if isinstance(act, Store):
                mem[act.var] = eval_arith(env, act.expr)
            elif isinstance(act, Load):
                rf[pid][act.dst] = mem.get(act.var, 0)
            elif isinstance(act, RegOp):
                rf[pid][act.dst] = eval_arith(env, act.expr)
        obs = {v: mem.get(v, 0) for v in litmus.variables()}
        for pid, r in litmus.registers():
            obs[f"{litmus.procs[pid].name}:{r}"] = rf[pid].get(r, 0)
        outcomes.add(tuple(sorted(obs.items())))
    return outcomes
