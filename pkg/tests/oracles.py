"""Independent reference computations for the tests.

Nothing here calls the library's multiplication: products are computed by
rewriting words over {p, q}.
"""
import itertools


def word(i, j):
    return "q" * i + "p" * j


def rewrite_all(w):
    """Every irreducible word reachable from ``w`` by deleting a ``pq`` factor,
    exploring all rewrite orders."""
    seen, stack, ends = {w}, [w], set()
    while stack:
        u = stack.pop()
        hits = [k for k in range(len(u) - 1) if u[k:k + 2] == "pq"]
        if not hits:
            ends.add(u)
        for k in hits:
            v = u[:k] + u[k + 2:]
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return ends


def normal_form(w):
    (end,) = rewrite_all(w)
    i = len(end) - len(end.lstrip("q"))
    assert end == word(i, len(end) - i)
    return (i, len(end) - i)


def naive_reduce(w):
    while "pq" in w:
        w = w.replace("pq", "", 1)
    i = len(w) - len(w.lstrip("q"))
    return (i, len(w) - i)


def word_product(*elements):
    return naive_reduce("".join(word(i, j) for i, j in elements))


def word_star(m, n, a, b):
    return word_product(a, (m, n), b)


def scan_left(m, n, a, b, bound):
    return {(i, j) for i in range(bound + 1) for j in range(bound + 1)
            if word_star(m, n, a, (i, j)) == tuple(b)}


def scan_right(m, n, a, b, bound):
    return {(i, j) for i in range(bound + 1) for j in range(bound + 1)
            if word_star(m, n, (i, j), a) == tuple(b)}


def pairs(w):
    return list(itertools.product(range(w + 1), repeat=2))
