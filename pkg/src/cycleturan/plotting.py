"""Deterministic SVG plots of measured log_n ex against x.

Output is byte-stable: the SVG hash salt is fixed, the date stamp is
dropped, and every artist gets an explicit gid. Record marks live in
groups whose id starts with ``records-``; one ``<use>`` per record.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import EmptyInput, ValidationError  # noqa: E402
from .predict import breakpoints, f_lower, f_upper  # noqa: E402
from .supersat.bounds import p0_p1_exponents  # noqa: E402
from .sweep import ExperimentRecord, curve  # noqa: E402

HASH_SALT = "cycleturan"
_RC = {
    "svg.hashsalt": HASH_SALT,
    "svg.fonttype": "path",
    "path.simplify": False,
    "font.family": "DejaVu Sans",
}


def _prediction(r: int, ell: int, lo: float, hi: float, steps: int = 400):
    xs = [lo + (hi - lo) * k / steps for k in range(steps + 1)]
    xs = sorted(set(xs) | {b for b in breakpoints(r, ell) if lo <= b <= hi})
    return xs, [f_lower(r, ell, x) for x in xs], [f_upper(r, ell, x) for x in xs]


def render_svg(records: Sequence[ExperimentRecord], prediction: bool = True, title: str | None = None) -> bytes:
    recs = [rec for rec in records if rec.estimator != "failed" and rec.ex_lower > 0]
    if not recs:
        raise EmptyInput("no plottable records")
    rs = {rec.r for rec in recs}
    ells = {rec.ell for rec in recs}
    if len(rs) != 1 or len(ells) != 1:
        raise ValidationError("records mix several (r, l) settings")
    r, ell = rs.pop(), ells.pop()
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.4))
        by_n: dict[int, list[ExperimentRecord]] = {}
        for rec in sorted(recs, key=lambda rec: rec.key):
            by_n.setdefault(rec.n, []).append(rec)
        for n, group in sorted(by_n.items()):
            ax.plot([rec.x for rec in group], [rec.log_lower() for rec in group], "o",
                    ms=3.5, alpha=0.6, label=f"n = {n}", gid=f"records-n{n}")
        for n, pts in sorted(curve(recs).items()):
            ax.plot([x for x, _ in pts], [y for _, y in pts], "-", lw=1.0, gid=f"mean-n{n}")
        xs_all = [rec.x for rec in recs]
        lo, hi = min(xs_all), max(xs_all)
        if prediction and r >= 3:
            pad = 0.05 * max(hi - lo, 0.2)
            plo, phi = max(1e-3, lo - pad), min(float(r), hi + pad)
            px, pl, pu = _prediction(r, ell, plo, phi)
            ax.plot(px, pl, "k--", lw=1.2, label="predicted f (lower)", gid="prediction-lower")
            if r == 3:
                ax.plot(px, pu, "k:", lw=1.2, label="predicted f (upper)", gid="prediction-upper")
                x0, x1 = p0_p1_exponents(r, ell)
                for name, xv in (("p0", x0), ("p1", x1)):
                    if plo <= xv <= phi:
                        ax.axvline(xv, color="0.6", lw=0.8, gid=f"marker-{name}")
                        ax.annotate(name, (xv, 0.02), xycoords=("data", "axes fraction"),
                                    fontsize=8, color="0.4", gid=f"label-{name}")
        ax.set_xlabel("x  (p = n^(x - r))")
        ax.set_ylabel("log_n ex lower bound")
        ax.set_title(title or f"r = {r}, l = {ell}")
        ax.legend(fontsize=8, loc="upper left")
        fig.tight_layout()
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def emit_plot(records: Sequence[ExperimentRecord], path, prediction: bool = True, title: str | None = None) -> Path:
    """Write the SVG for ``records`` to ``path``."""
    data = render_svg(records, prediction, title)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return path


def count_record_marks(svg: bytes | str) -> int:
    """Markers drawn inside the ``records-`` groups of an SVG produced here."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg)
    total = 0
    for g in root.iter("{http://www.w3.org/2000/svg}g"):
        if g.get("id", "").startswith("records-"):
            total += sum(1 for el in g.iter() if el.tag.endswith("use"))
    return total

