"""Time series, discrete signed areas and exact signatures of linear splines.

A TimeSeries is a breakpoint sequence anchored at the origin; there are no
timestamps because the signature does not see the parametrization.  In
exact mode every value is a Fraction and all identities here hold with
exact equality; float64 mode exists for bulk CSV input and makes no
exactness promise (float values are carried into the signature through
their exact binary expansions, results are reported back as floats).
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .tensor import TensorElem, concat, exp_conc, unit
from .trees import is_leaf

EXACT = "exact_rational"
FLOAT = "float64"


class ScalarSeries:
    """Scalar breakpoint values v0 = 0, v1, ..., vn."""

    __slots__ = ("values", "mode")

    def __init__(self, values, mode=EXACT):
        values = list(values)
        if not values:
            raise ValueError("a series needs at least the starting value")
        if values[0] != 0:
            raise ValueError("series must start at zero")
        if mode == EXACT:
            values = [v if isinstance(v, Fraction) else Fraction(v) for v in values]
        self.values = values
        self.mode = mode

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        return isinstance(other, ScalarSeries) and self.values == other.values

    def __repr__(self):
        return "ScalarSeries(%r)" % (self.values,)

    def final(self):
        return self.values[-1]

    def to_json_obj(self):
        if self.mode == EXACT:
            vals = [str(v) for v in self.values]
        else:
            vals = [float(v) for v in self.values]
        return {"mode": self.mode, "values": vals}

    def to_json(self):
        return json.dumps(self.to_json_obj())


class TimeSeries:
    """Points x0 = 0, x1, ..., xn in ambient dimension d."""

    __slots__ = ("dim", "points", "mode", "meta")

    def __init__(self, points, mode=EXACT, meta=None):
        points = [tuple(p) for p in points]
        if not points:
            raise ValueError("a time series needs at least the origin")
        dims = {len(p) for p in points}
        if len(dims) != 1:
            raise ValueError("points have mixed dimensions")
        self.dim = dims.pop()
        if self.dim < 1:
            raise ValueError("need dimension >= 1")
        if any(v != 0 for v in points[0]):
            raise ValueError("time series must start at the origin")
        if mode == EXACT:
            points = [
                tuple(v if isinstance(v, Fraction) else Fraction(v) for v in p)
                for p in points
            ]
        self.points = points
        self.mode = mode
        self.meta = dict(meta or {})

    def __len__(self):
        return len(self.points)

    def coordinate(self, i: int) -> ScalarSeries:
        """The i-th coordinate (letters count from 1) as a scalar series."""
        if not 1 <= i <= self.dim:
            raise ValueError("coordinate %d outside 1..%d" % (i, self.dim))
        return ScalarSeries([p[i - 1] for p in self.points], self.mode)


def discrete_area(a: ScalarSeries, b: ScalarSeries) -> ScalarSeries:
    """Antisymmetrized cross-correlation of two series.

    The orientation is fixed so that the final value equals the pairing of
    the signed-area element with the signature of the linear interpolation,
    exactly, in exact mode; see signature_pwl.
    """
    if len(a) != len(b):
        raise ValueError("series lengths differ")
    out = [a.values[0] * 0]
    acc = out[0]
    for i in range(len(a) - 1):
        acc = acc + a[i] * b[i + 1] - a[i + 1] * b[i]
        out.append(acc)
    mode = EXACT if a.mode == b.mode == EXACT else FLOAT
    return ScalarSeries(out, mode)


def discrete_integral(a: ScalarSeries, b: ScalarSeries) -> ScalarSeries:
    """Trapezoid-rule integral of a against the increments of b.

    Its final value matches the order-two signature coefficient, but unlike
    discrete_area this rule does not iterate to higher orders.
    """
    if len(a) != len(b):
        raise ValueError("series lengths differ")
    half = Fraction(1, 2) if a.mode == b.mode == EXACT else 0.5
    out = [a.values[0] * 0]
    acc = out[0]
    for i in range(len(a) - 1):
        acc = acc + half * (a[i] + a[i + 1]) * (b[i + 1] - b[i])
        out.append(acc)
    mode = EXACT if a.mode == b.mode == EXACT else FLOAT
    return ScalarSeries(out, mode)


def discrete_area_tree(tree, x: TimeSeries) -> ScalarSeries:
    """Iterate discrete_area through a labeled binary area tree."""
    if is_leaf(tree):
        return x.coordinate(tree)
    _, left, right = tree
    return discrete_area(discrete_area_tree(left, x), discrete_area_tree(right, x))


def signature_pwl(x: TimeSeries, level: int = 5) -> TensorElem:
    """Truncated signature of the piecewise-linear path through the points.

    Each segment contributes the exponential of its increment; segments
    multiply by concatenation.  The result is grouplike up to the level.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    sig = unit(x.dim)
    for start, end in zip(x.points, x.points[1:]):
        increment = TensorElem(
            x.dim,
            {
                (i + 1,): Fraction(end[i]) - Fraction(start[i])
                for i in range(x.dim)
            },
        )
        sig = concat(sig, exp_conc(increment, level), level)
    return sig


def signature_pairing(phi: TensorElem, x: TimeSeries, level=None):
    """<phi, signature of x>, at the level needed by phi unless given."""
    from .tensor import pairing

    if level is None:
        level = max(phi.degree(), 1)
    value = pairing(phi, signature_pwl(x, level))
    return float(value) if x.mode == FLOAT else value


def _parse_token(token: str):
    token = token.strip()
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        return None


def load_timeseries(source, fmt: str = "csv") -> TimeSeries:
    """Read a d-column CSV (optional header) into an origin-anchored series.

    All-numeric rows become the points; a leading zero row is prepended when
    absent.  Tokens that all parse as integers, fractions, or finite
    decimals give exact mode, anything else falls back to float64.
    """
    if fmt != "csv":
        raise ValueError("only csv input is supported")
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(
        cell.strip() for cell in row
    )]
    if not rows:
        raise ValueError("empty csv input")
    start = 0
    header_skipped = False
    if any(_parse_token(cell) is None and not _is_float(cell) for cell in rows[0]):
        start = 1
        header_skipped = True
        if start == len(rows):
            raise ValueError("csv has a header but no data rows")
    widths = {len(row) for row in rows[start:]}
    if len(widths) != 1:
        raise ValueError("ragged csv rows: widths %s" % sorted(widths))
    exact = True
    parsed = []
    for row in rows[start:]:
        values = []
        for cell in row:
            value = _parse_token(cell)
            if value is None:
                if not _is_float(cell):
                    raise ValueError("unparseable csv token %r" % cell)
                exact = False
                value = float(cell)
            values.append(value)
        parsed.append(tuple(values))
    mode = EXACT if exact else FLOAT
    if not exact:
        parsed = [tuple(float(v) for v in p) for p in parsed]
    dim = len(parsed[0])
    origin = tuple(Fraction(0) if exact else 0.0 for _ in range(dim))
    anchored = all(v == 0 for v in parsed[0])
    if not anchored:
        parsed.insert(0, origin)
    meta = {"zero_row_prepended": not anchored, "header_skipped": header_skipped}
    return TimeSeries(parsed, mode, meta)


def _is_float(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True
