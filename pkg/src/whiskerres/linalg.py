"""Exact ranks of sparse integer matrices over Q, GF(2) and GF(p).

Matrices are given as lists of sparse columns ``{row: value}``.  Over Q the
elimination is fraction-free on Python integers; no floating point is used.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence

FIELDS = {"q": 0, "f2": 2, "f3": 3}
_ALIASES = {"Q": "q", "QQ": "q", "0": "q", "GF(2)": "f2", "2": "f2", "GF(3)": "f3", "3": "f3"}


def parse_field(field) -> str:
    key = str(field)
    key = _ALIASES.get(key, key).lower()
    if key not in FIELDS:
        raise ValueError(f"unknown field {field!r}; expected one of q, f2, f3")
    return key


def characteristic(field) -> int:
    return FIELDS[parse_field(field)]


def rank(columns: Sequence[dict[int, int]], field="q") -> int:
    p = characteristic(field)
    if p == 2:
        return _rank_gf2(columns)
    if p == 0:
        return _rank_q(columns)
    return _rank_modp(columns, p)


def _rank_gf2(columns) -> int:
    pivots: dict[int, int] = {}
    r = 0
    for col in columns:
        v = 0
        for row, val in col.items():
            if val % 2:
                v |= 1 << row
        while v:
            top = v.bit_length() - 1
            other = pivots.get(top)
            if other is None:
                pivots[top] = v
                r += 1
                break
            v ^= other
    return r


def _rank_modp(columns, p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for col in columns:
        v = {row: val % p for row, val in col.items() if val % p}
        while v:
            top = max(v)
            other = pivots.get(top)
            if other is None:
                inv = pow(v[top], -1, p)
                pivots[top] = {k: x * inv % p for k, x in v.items()}
                r += 1
                break
            f = v[top]
            for k, x in other.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return r


def _rank_q(columns) -> int:
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for col in columns:
        v = {row: val for row, val in col.items() if val}
        while v:
            top = max(v)
            other = pivots.get(top)
            if other is None:
                pivots[top] = v
                r += 1
                break
            a, b = other[top], v[top]
            g = gcd(a, b)
            a, b = a // g, b // g
            w = {}
            for k in set(v) | set(other):
                y = a * v.get(k, 0) - b * other.get(k, 0)
                if y:
                    w[k] = y
            content = 0
            for y in w.values():
                content = gcd(content, y)
                if content == 1:
                    break
            if content > 1:
                w = {k: y // content for k, y in w.items()}
            v = w
    return r
