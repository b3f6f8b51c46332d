"""Named ring instances used by the theorem registry and the test oracles."""
from __future__ import annotations

from .expr import descriptor_order, parse_ring_expr

# every entry has order <= 256
SMALL = (
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z12", "Z15", "Z16",
    "Z18", "Z25", "Z27", "Z30",
    "GF(4)", "GF(8)", "GF(9)",
    "Z2 x Z2", "Z2 x Z2 x Z2", "Z3 x Z2", "Z3 x Z3", "Z3 x Z2 x Z2",
    "Z3 x Z3 x Z2", "Z3 x Z3 x Z3", "Z4 x Z2", "GF(4) x Z3",
    "M2(Z2)", "M2(Z3)", "M2(Z4)", "M2(GF(4))",
    "T2(Z2)", "T2(Z3)", "T2(Z4)", "T3(Z2)", "T2(GF(4))", "T2(Z6)",
    "trunc(Z2,2)", "trunc(Z2,3)", "trunc(Z2,5)", "trunc(Z3,2)", "trunc(Z3,3)",
    "trunc(Z4,2)", "trunc(Z6,2)", "trunc(GF(4),2)",
    "trivext(Z2,1)", "trivext(Z2,2)", "trivext(Z3,2)", "trivext(Z4,1)",
    "trivext(Z6,1)", "trivext(GF(4),1)",
    "morita0(Z2,0,0)", "morita0(Z2,1,0)", "morita0(Z2,1,1)", "morita0(Z2,2,1)",
    "morita0(Z3,1,1)", "morita0(Z4,1,1)",
    "M2(Z2) x Z2", "M2(Z2) x Z3", "T2(Z2) x Z3",
    "trunc(T2(Z2),2)", "trivext(T2(Z2),1)",
)

# connected rings for the |R/J| = 2 criterion of nil-cleanness of M_n(R)
CONNECTED = (
    "Z4", "Z8", "Z9", "GF(4)", "trivext(Z2,1)", "trivext(Z2,2)", "trivext(Z3,2)",
)


def small_catalog(max_order: int = 256) -> list[str]:
    return [e for e in SMALL if descriptor_order(parse_ring_expr(e)) <= max_order]
