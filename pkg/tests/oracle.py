"""Brute-force reference for the similarity formulas.

Works on a plain dict model of a noun database and enumerates every
sense pair and all level pairs with no shortcuts. Sums are accumulated
exactly with Fraction and rounded once at the end.
"""

from fractions import Fraction

R = (0.6, 0.3, 0.1)
U = (0.5, 0.25, 0.125, 0.0625, 0.03125)
MIX = 0.5


class Model:
    def __init__(self, synsets, senses):
        # synsets: id -> (lemmas, direct hypernym ids); senses: lemma -> [ids]
        self.synsets = synsets
        self.senses = senses

    def levels(self, s, depth):
        out = []
        current = {s}
        for _ in range(depth):
            nxt = set()
            for c in current:
                for h in self.synsets[c][1]:
                    nxt.add(h)
            out.append(nxt)
            current = nxt
        return out


def g(model, sa, sb):
    return 1 if set(model.synsets[sa][0]) & set(model.synsets[sb][0]) else 0


def h(model, sa, sb, l, f, depth):
    return 1 if model.levels(sa, depth)[l - 1] & model.levels(sb, depth)[f - 1] else 0


def sense_hyp(model, sa, sb, u=U):
    depth = len(u)
    best = 0.0
    for l in range(1, depth + 1):
        for f in range(1, depth + 1):
            val = u[abs(l - f)] * h(model, sa, sb, l, f, depth)
            if val > best:
                best = val
    return best


def syn_sim(model, a, b, r=R):
    total = Fraction(0)
    sa_list = model.senses.get(a, [])[: len(r)]
    sb_list = model.senses.get(b, [])[: len(r)]
    for i in range(len(sa_list)):
        for j in range(len(sb_list)):
            if g(model, sa_list[i], sb_list[j]):
                total += Fraction(r[i] * r[j])
    return float(total)


def hyp_sim(model, a, b, r=R, u=U):
    total = Fraction(0)
    sa_list = model.senses.get(a, [])[: len(r)]
    sb_list = model.senses.get(b, [])[: len(r)]
    for i in range(len(sa_list)):
        for j in range(len(sb_list)):
            total += Fraction(r[i] * r[j] * sense_hyp(model, sa_list[i], sb_list[j], u))
    return float(total)


def word_sim(model, a, b, r=R, u=U, mix=MIX):
    return mix * syn_sim(model, a, b, r) + (1.0 - mix) * hyp_sim(model, a, b, r, u)


def phrase_sim(model, A, B, r=R, u=U, mix=MIX):
    total = Fraction(0)
    for x in A:
        for y in B:
            total += Fraction(word_sim(model, x, y, r, u, mix))
    return float(total) / (len(A) * len(B))


# the mini fixture written out by hand, independent of the file parser
MINI = Model(
    synsets={
        10: (("entity",), ()),
        20: (("thing",), (10,)),
        30: (("object",), (10,)),
        40: (("alpha", "alef"), (20,)),
        50: (("beta", "z"), (20, 30)),
        60: (("gamma", "z"), (40,)),
        70: (("delta", "beta"), (30,)),
        80: (("omega", "z"), (60,)),
    },
    senses={
        "alef": [40],
        "alpha": [40],
        "beta": [50, 70],
        "delta": [70],
        "entity": [10],
        "gamma": [60],
        "object": [30],
        "omega": [80],
        "thing": [20],
        "z": [50, 60, 80],
    },
)
