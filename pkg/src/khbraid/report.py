"""JSON documents and text tables for the command-line front end."""

from __future__ import annotations

import json
from typing import Any, Optional

from .basepoints import ModuleStructure
from .braid import BraidWord, component_count, format_braid
from .homology import HomologyTable, format_laurent
from .transverse import TransverseReport


def base_document(w: BraidWord) -> dict[str, Any]:
    return {
        "word": format_braid(w),
        "n_strands": w.n_strands,
        "writhe": w.exponent_sum,
        "components": component_count(w),
        "betti": None,
        "module": None,
        "psi": None,
        "verdict": None,
    }


def betti_rows(t: HomologyTable) -> list[dict[str, int]]:
    return [{"i": i, "j": j, "dim": d} for i, j, d in t.rows()]


def module_json(ms: ModuleStructure, with_actions: bool = False) -> dict[str, Any]:
    out: dict[str, Any] = {
        "free_rank_one": ms.free_rank_one,
        "witness_bidegree": list(ms.witness[0]) if ms.witness else None,
    }
    if with_actions:
        out["squares_vanish"] = ms.squares_vanish
        out["commute"] = ms.commute
        out["actions"] = [
            {
                "basepoint": idx + 1,
                "maps": [
                    {"source": [h, q], "target": [h, q - 2], "matrix": m.to_dense()}
                    for (h, q), m in sorted(action.items())
                ],
            }
            for idx, action in enumerate(ms.actions)
        ]
    return out


def psi_json(bidegree, nonzero: bool) -> dict[str, Any]:
    return {"i": bidegree[0], "j": bidegree[1], "nonzero": nonzero}


def certify_document(r: TransverseReport) -> dict[str, Any]:
    doc = base_document(r.word)
    if r.table is not None:
        doc["betti"] = betti_rows(r.table)
        doc["module"] = module_json(r.sides[0].module)
    doc["psi"] = psi_json(r.psi_bidegree, r.psi_nonzero)
    doc["verdict"] = r.verdict.value
    doc["stages"] = {
        "component_ok": r.component_ok,
        "module_free": r.module_free,
        "psi_nonzero": r.psi_nonzero,
        "right_veering": r.right_veering,
        "mirror_psi_nonzero": r.mirror_psi_nonzero,
        "left_veering": r.left_veering,
    }
    doc["evidence"] = {
        "witness": _witness(r.witness),
        "mirror_witness": _witness(r.mirror_witness),
        "product_hits_psi": [s.product_hits_psi for s in r.sides],
    }
    return doc


def _witness(w: Optional[tuple]) -> Optional[dict[str, Any]]:
    if w is None:
        return None
    (h, q), k = w
    return {"i": h, "j": q, "index": k}


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def poly_json(p: dict[int, int]) -> list[list[int]]:
    return [[e, p[e]] for e in sorted(p)]


def format_table(t: HomologyTable) -> str:
    """Grid with homological degree across and quantum degree down."""
    if not t.dims:
        return "(zero)"
    hs = sorted({i for i, _ in t.dims})
    qs = sorted({j for _, j in t.dims}, reverse=True)
    hs = list(range(hs[0], hs[-1] + 1))
    width = max(3, *(len(str(h)) for h in hs))
    lines = ["j\\i".rjust(5) + " " + " ".join(str(h).rjust(width) for h in hs)]
    for q in qs:
        cells = [str(t.dims[(h, q)]) if (h, q) in t.dims else "." for h in hs]
        lines.append(str(q).rjust(5) + " " + " ".join(c.rjust(width) for c in cells))
    return "\n".join(lines)


def jones_text(state_sum: dict[int, int], euler: dict[int, int]) -> str:
    return (
        f"state sum:   {format_laurent(state_sum)}\n"
        f"Kh euler:    {format_laurent(euler)}\n"
        f"agree:       {state_sum == euler}"
    )
