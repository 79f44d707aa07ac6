"""Result serialization: self-describing JSON documents, CSV, DOT, and SVG.

Every document records the tool version, a digest of the input edge list,
and the full parameter set (defaults included), so re-running with the
recorded parameters reproduces it byte for byte.  Emitters only format
values produced by the analysis modules; nothing is recomputed here.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from collections.abc import Iterable

from ._version import __version__
from .community import GroupSummary, Partition, RemovalAnalysis
from .ensemble import EnsembleSummary
from .hemicycle import HemicycleLayout
from .metrics import StructuralIndices
from .richclub import CentralityByDegreeRow, RichClubProfile, RichClubResult

TOOL_NAME = "densegraph"


def file_digest(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def document(kind: str, parameters: dict, result: dict, input_info: dict | None = None) -> dict:
    return {
        "tool": {"name": TOOL_NAME, "version": __version__},
        "kind": kind,
        "input": input_info,
        "parameters": parameters,
        "result": result,
    }


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _finite(value: float) -> float | None:
    return None if value is None or not math.isfinite(value) else value


# ---------------------------------------------------------------------------
# payload builders


def indices_payload(indices: StructuralIndices) -> dict:
    payload = {name: value for name, value in indices.as_dict().items()}
    payload["component_policy"] = {
        "component_count": indices.component_policy.component_count,
        "component_size": indices.component_policy.component_size,
        "vertex_count": indices.component_policy.vertex_count,
        "description": indices.component_policy.describe(),
    }
    return payload


def indices_table(indices: StructuralIndices) -> str:
    """Aligned text table of the structural-index record."""
    rows = [
        ("vertices", "n", f"{indices.vertex_count}"),
        ("edges", "m", f"{indices.edge_count}"),
        ("density", "d", f"{indices.density:.4f}"),
        ("mean degree", "k", f"{indices.mean_degree:.4f}"),
        ("mean distance", "l", f"{indices.mean_distance:.4f}"),
        ("characteristic path length", "L", f"{indices.characteristic_path_length:.4f}"),
        ("diameter", "D", f"{indices.diameter}"),
        ("local clustering", "C1", f"{indices.local_clustering:.4f}"),
        ("transitivity", "C2", f"{indices.transitivity:.4f}"),
        ("degree centralization", "C_D", f"{indices.degree_centralization:.4f}"),
        ("betweenness centralization", "C_B", f"{indices.betweenness_centralization:.4f}"),
        ("closeness centralization", "C_P", f"{indices.closeness_centralization:.4f}"),
    ]
    name_width = max(len(name) for name, _, _ in rows)
    symbol_width = max(len(symbol) for _, symbol, _ in rows)
    lines = [f"{name:<{name_width}}  {symbol:<{symbol_width}}  {value}" for name, symbol, value in rows]
    lines.append(f"{'path metrics on':<{name_width}}  {'':<{symbol_width}}  {indices.component_policy.describe()}")
    return "\n".join(lines) + "\n"


def ensemble_payload(summary: EnsembleSummary) -> dict:
    return {
        "parameters": {
            "vertex_count": summary.params.vertex_count,
            "edge_probability": summary.params.edge_probability,
            "samples": summary.params.samples,
            "seed": summary.params.seed,
        },
        "connected_only": summary.connected_only,
        "disconnected_count": summary.disconnected_count,
        "indices": {
            name: {
                "mean": _finite(stat.mean),
                "sd": _finite(stat.sd),
                "undefined_count": stat.undefined_count,
            }
            for name, stat in summary.stats.items()
        },
    }


def profile_payload(profile: RichClubProfile) -> list[dict]:
    return [
        {
            "rank": row.rank,
            "label": row.label,
            "degree": row.degree,
            "phi": row.density,
            "diameter": row.diameter,
            "connected": row.connected,
        }
        for row in profile.rows
    ]


def richclub_payload(profile: RichClubProfile, result: RichClubResult | None) -> dict:
    club = None
    if result is not None:
        club = {
            "members": list(result.members),
            "size": result.size,
            "internal_density": result.internal_density,
            "missing_edges": result.missing_edges,
            "threshold": result.threshold,
            "next_density": result.next_density,
            "diameter_jump": result.diameter_jump,
        }
    return {"profile": profile_payload(profile), "club": club}


def profile_csv(profile: RichClubProfile) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["r", "label", "degree", "phi", "diam", "connected"])
    for row in profile.rows:
        writer.writerow(
            [
                row.rank,
                row.label,
                row.degree,
                f"{row.density:.6f}",
                "" if row.diameter is None else row.diameter,
                str(row.connected).lower(),
            ]
        )
    return buffer.getvalue()


def centrality_csv(rows: Iterable[CentralityByDegreeRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["rank", "label", "degree", "betweenness", "closeness"])
    for row in rows:
        writer.writerow([row.rank, row.label, row.degree, repr(row.betweenness), repr(row.closeness)])
    return buffer.getvalue()


def partition_payload(partition: Partition) -> dict:
    return {
        "method": partition.method,
        "modularity": partition.modularity,
        "classes": [sorted(cls) for cls in partition.classes],
    }


def group_summary_payload(summary: GroupSummary) -> dict:
    return {
        "groups": [
            {"name": group.name, "kind": group.kind, "members": list(group.members)}
            for group in summary.groups
        ],
        "edges": [[i, j, count] for i, j, count in summary.edge_counts],
    }


def communities_payload(analysis: RemovalAnalysis) -> dict:
    return {
        "excluded": list(analysis.excluded),
        "partitions": {name: partition_payload(p) for name, p in analysis.partitions.items()},
        "stable_communities": None
        if analysis.stable is None
        else [sorted(group) for group in analysis.stable],
        "summaries": {name: group_summary_payload(s) for name, s in analysis.summaries.items()},
    }


def layout_payload(layout: HemicycleLayout) -> dict:
    return {
        "club": list(layout.club),
        "diagnostic_correlation": layout.diagnostic_correlation,
        "placements": [
            {
                "label": p.label,
                "club_distance": p.club_distance,
                "radius": p.radius,
                "angle": p.angle,
            }
            for p in layout.placements
        ],
        "warnings": list(layout.warnings),
    }


# ---------------------------------------------------------------------------
# DOT and SVG emitters (write-only; render with external tools)


def _wrap_members(members: tuple[str, ...], per_line: int = 5) -> str:
    chunks = [" ".join(members[i : i + per_line]) for i in range(0, len(members), per_line)]
    return "\\n".join(chunks)


def export_dot(summary: GroupSummary, name: str = "communities") -> str:
    """Modular summary graph: one node per group, edges labeled with the
    number of links between the two groups (club box, community diamonds,
    isolated/pendant disks)."""
    shapes = {"club": "box", "community": "diamond", "singleton": "circle"}
    lines = [f"graph {name} {{", "  node [style=filled, fillcolor=white];"]
    for i, group in enumerate(summary.groups):
        label = f"{group.name}\\n{_wrap_members(group.members)}" if len(group.members) > 1 else group.name
        lines.append(f'  g{i} [shape={shapes[group.kind]}, label="{label}"];')
    for i, j, count in summary.edge_counts:
        lines.append(f'  g{i} -- g{j} [label="{count}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_svg(layout: HemicycleLayout, size: int = 800) -> str:
    """Unit half-disk with the club at the origin and one glyph per placed
    vertex at (radius*cos(angle), radius*sin(angle))."""
    margin = 40
    scale = (size - 2 * margin) / 2.0
    cx = size / 2.0
    cy = margin + scale
    height = int(cy + margin)

    def point(radius: float, angle: float) -> tuple[float, float]:
        return (cx + scale * radius * math.cos(angle), cy - scale * radius * math.sin(angle))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" '
        f'viewBox="0 0 {size} {height}">',
        f'  <path d="M {cx - scale} {cy} A {scale} {scale} 0 0 1 {cx + scale} {cy} Z" '
        'fill="none" stroke="#888" stroke-width="1"/>',
        f'  <rect x="{cx - 14}" y="{cy - 10}" width="28" height="20" fill="#444"/>',
        f'  <title>club: {" ".join(layout.club)}</title>',
        f'  <text x="{cx}" y="{cy + 24}" text-anchor="middle" font-size="11">'
        f"club ({len(layout.club)})</text>",
    ]
    for placement in layout.placements:
        x, y = point(placement.radius, placement.angle)
        parts.append(
            f'  <circle class="vertex" cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#2a6" stroke="#054"/>'
        )
        parts.append(
            f'  <text x="{x:.2f}" y="{y - 7:.2f}" text-anchor="middle" font-size="10">'
            f"{placement.label}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
