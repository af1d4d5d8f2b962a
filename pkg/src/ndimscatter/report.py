"""Comparison report record and its text / JSON / CSV renderings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

METHODS = ("ndim", "residue", "quadrature")
CSV_COLUMNS = ("method", "branch", "value_re", "value_im", "error_estimate", "exact",
               "max_pairwise_deviation", "wall_time_ms")


def fmt(x: float) -> str:
    # adding 0.0 folds -0.0 into 0.0
    return format(float(x) + 0.0, ".17g")


def complex_to_json(z: Optional[complex]):
    if z is None:
        return None
    return {"re": float(fmt(z.real)), "im": float(fmt(z.imag))}


def complex_from_json(d) -> Optional[complex]:
    if d is None:
        return None
    return complex(float(d["re"]), float(d["im"]))


def format_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{fmt(z.real)} {sign} {fmt(abs(z.imag))}i"


def max_deviation(values) -> Optional[float]:
    vals = [v for v in values if v is not None]
    if len(vals) < 2:
        return None
    return max(abs(u - v) for i, u in enumerate(vals) for v in vals[i + 1:])


@dataclass
class ComparisonReport:
    integrand: str
    branch: str
    params: dict = field(default_factory=dict)
    ndim_value: Optional[complex] = None
    ndim_exact: Optional[str] = None
    residue_value: Optional[complex] = None
    quadrature_value: Optional[complex] = None
    quadrature_error: Optional[float] = None
    max_pairwise_deviation: Optional[float] = None
    wall_times: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.max_pairwise_deviation is None:
            self.max_pairwise_deviation = max_deviation(self.values().values())

    def values(self) -> dict:
        return {"ndim": self.ndim_value, "residue": self.residue_value,
                "quadrature": self.quadrature_value}

    def to_dict(self) -> dict:
        return {
            "integrand": self.integrand,
            "branch": self.branch,
            "params": dict(self.params),
            "ndim": None if self.ndim_value is None else
            {"value": complex_to_json(self.ndim_value), "exact": self.ndim_exact},
            "residue": None if self.residue_value is None else
            {"value": complex_to_json(self.residue_value)},
            "quadrature": None if self.quadrature_value is None else
            {"value": complex_to_json(self.quadrature_value),
             "error_estimate": float(fmt(self.quadrature_error))},
            "max_pairwise_deviation": None if self.max_pairwise_deviation is None
            else float(fmt(self.max_pairwise_deviation)),
            "wall_times_ms": {k: float(fmt(v)) for k, v in self.wall_times.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ComparisonReport":
        nd, rs, qd = d.get("ndim"), d.get("residue"), d.get("quadrature")
        return cls(
            integrand=d["integrand"],
            branch=d["branch"],
            params=dict(d.get("params", {})),
            ndim_value=complex_from_json(nd["value"]) if nd else None,
            ndim_exact=nd.get("exact") if nd else None,
            residue_value=complex_from_json(rs["value"]) if rs else None,
            quadrature_value=complex_from_json(qd["value"]) if qd else None,
            quadrature_error=qd["error_estimate"] if qd else None,
            max_pairwise_deviation=d.get("max_pairwise_deviation"),
            wall_times=dict(d.get("wall_times_ms", {})),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "ComparisonReport":
        return cls.from_dict(json.loads(text))

    def rows(self) -> list:
        out = []
        errors = {"quadrature": self.quadrature_error}
        exact = {"ndim": self.ndim_exact}
        for method, value in self.values().items():
            if value is None:
                continue
            err = errors.get(method)
            dev = self.max_pairwise_deviation
            wall = self.wall_times.get(method)
            out.append({
                "method": method,
                "branch": self.branch,
                "value_re": fmt(value.real),
                "value_im": fmt(value.imag),
                "error_estimate": "" if err is None else fmt(err),
                "exact": exact.get(method) or "",
                "max_pairwise_deviation": "" if dev is None else fmt(dev),
                "wall_time_ms": "" if wall is None else fmt(wall),
            })
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows())
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.integrand}  [{self.branch}]"]
        for row in self.rows():
            z = complex(float(row["value_re"]), float(row["value_im"]))
            line = f"{row['method']:<11s} {format_complex(z)}"
            if row["error_estimate"]:
                line += f" (±{row['error_estimate']})"
            if row["exact"]:
                line += f" ({row['exact']})"
            if row["wall_time_ms"]:
                line += f"  [{row['wall_time_ms']} ms]"
            lines.append(line)
        if self.max_pairwise_deviation is not None:
            lines.append(f"max pairwise deviation: {fmt(self.max_pairwise_deviation)}")
        return "\n".join(lines)

    def render(self, fmt_name: str) -> str:
        if fmt_name == "json":
            return self.to_json()
        if fmt_name == "csv":
            return self.to_csv().rstrip("\n")
        return self.to_text()
