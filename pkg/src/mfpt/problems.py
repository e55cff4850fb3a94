"""Benchmark chains, random instance generation, and matrix file IO.

The built-in problems are a graded set of irreducible test chains:
small well-conditioned chains (tp1, tp2), a nearly reducible chain with
diagonal 0.999999 (tp3), and a family of two weakly coupled 5-state
blocks whose coupling strength steps down from 1e-1 to 1e-7
(tp41..tp44). Larger instances are random sparse chains produced by
:func:`generate_sparse`; one 100-state and one 500-state instance are
shipped as package data under the names ``sparse100`` and ``sparse500``.

Files are written in Matrix Market (array or coordinate) or CSV form.
All values are serialized with shortest round-trip decimal formatting
(Python repr), so save -> load -> save is byte identical; see README
for exact byte-level format notes.
"""

import csv
import io
from importlib import resources

import numpy as np

from .exceptions import MatrixFileError
from .validation import is_irreducible

_TP1 = [
    [0.1, 0.6, 0.0, 0.3, 0.0, 0.0],
    [0.5, 0.5, 0.0, 0.0, 0.0, 0.0],
    [0.5, 0.2, 0.0, 0.0, 0.3, 0.0],
    [0.0, 0.7, 0.0, 0.2, 0.0, 0.1],
    [0.1, 0.0, 0.8, 0.0, 0.0, 0.1],
    [0.4, 0.0, 0.4, 0.0, 0.0, 0.2],
]

_TP2 = [
    [0.85, 0.0, 0.149, 0.0009, 0.0, 0.00005, 0.0, 0.00005],
    [0.1, 0.65, 0.249, 0.0, 0.0009, 0.00005, 0.0, 0.00005],
    [0.1, 0.8, 0.0996, 0.0003, 0.0, 0.0, 0.0001, 0.0],
    [0.0, 0.0004, 0.0, 0.7, 0.2995, 0.0, 0.0001, 0.0],
    [0.0005, 0.0, 0.0004, 0.399, 0.6, 0.0001, 0.0, 0.0],
    [0.0, 0.00005, 0.0, 0.0, 0.00005, 0.6, 0.2499, 0.15],
    [0.00003, 0.0, 0.00003, 0.00004, 0.0, 0.1, 0.8, 0.0999],
    [0.0, 0.00005, 0.0, 0.0, 0.00005, 0.1999, 0.25, 0.55],
]

_TP3 = [
    [0.999999, 0.0000001, 0.0000002, 0.0000003, 0.0000004],
    [0.4, 0.3, 0.0, 0.0, 0.3],
    [0.0000005, 0.0, 0.999999, 0.0000005, 0.0],
    [0.0, 0.0000005, 0.0, 0.999999, 0.0000005],
    [0.0000002, 0.0000003, 0.0000001, 0.0000004, 0.999999],
]

# Two 5-state blocks; the coupling entries at (0,0), (0,5), (5,0), (5,5)
# depend on the coupling strength.
_TP4_BASE = [
    [0.1, 0.3, 0.1, 0.2, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.1, 0.1, 0.2, 0.4, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.1, 0.2, 0.2, 0.4, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.4, 0.2, 0.1, 0.2, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.6, 0.3, 0.0, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.2, 0.2, 0.4, 0.1],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.2, 0.2, 0.1, 0.3, 0.2],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.0, 0.5, 0.2, 0.2],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.2, 0.1, 0.2],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.2, 0.2, 0.3, 0.2],
]


def coupled_blocks(epsilon):
    """Two weakly coupled 5-state blocks with coupling ``epsilon``.

    The diagonal heads of both blocks give up ``epsilon`` of their mass
    to the opposite block: entries (0,0) and (5,5) become
    0.1 - epsilon while (0,5) and (5,0) become epsilon. ``epsilon = 0``
    would be exactly reducible, so it is rejected.
    """
    if not 0 < epsilon <= 0.1:
        raise ValueError(f"coupling must lie in (0, 0.1], got {epsilon!r}")
    p = np.array(_TP4_BASE, dtype=np.float64)
    p[0, 0] -= epsilon
    p[0, 5] = epsilon
    p[5, 0] = epsilon
    p[5, 5] -= epsilon
    return p


def _packaged(name):
    ref = resources.files("mfpt").joinpath(f"data/{name}.mtx")
    with resources.as_file(ref) as path:
        return load_matrix(path)


_BUILDERS = {
    "tp1": lambda: np.array(_TP1, dtype=np.float64),
    "tp2": lambda: np.array(_TP2, dtype=np.float64),
    "tp3": lambda: np.array(_TP3, dtype=np.float64),
    "tp41": lambda: coupled_blocks(1e-1),
    "tp42": lambda: coupled_blocks(1e-3),
    "tp43": lambda: coupled_blocks(1e-5),
    "tp44": lambda: coupled_blocks(1e-7),
    "sparse100": lambda: _packaged("sparse100"),
    "sparse500": lambda: _packaged("sparse500"),
}


def list_problems():
    """Names accepted by :func:`builtin_problem`, in canonical order."""
    return list(_BUILDERS)


def builtin_problem(name):
    """Return a built-in problem matrix by name (always float64)."""
    key = name.lower()
    if key not in _BUILDERS:
        known = ", ".join(_BUILDERS)
        raise KeyError(f"unknown problem {name!r}; known problems: {known}")
    return _BUILDERS[key]()


def generate_sparse(m, zero_proportion=0.6, seed=None, max_attempts=32):
    """Random sparse irreducible transition matrix.

    Draws an off-diagonal 0/1 pattern keeping each position with
    probability ``1 - zero_proportion``, re-draws any all-zero row
    (bounded), normalizes rows, and verifies irreducibility, re-drawing
    the whole pattern up to ``max_attempts`` times. Driven by numpy's
    seeded PCG64 generator, so identical arguments give bit-identical
    matrices.

    Parameters
    ----------
    m : int
        Number of states, m >= 2.
    zero_proportion : float
        Expected fraction of zero off-diagonal entries, in [0, 1).
    seed : int or None
        Seed for ``numpy.random.default_rng``.

    Returns
    -------
    (m, m) float64 ndarray
    """
    if m < 2:
        raise ValueError(f"need at least 2 states, got {m}")
    if not 0 <= zero_proportion < 1:
        raise ValueError(f"zero_proportion must lie in [0, 1), got {zero_proportion!r}")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        pattern = rng.random((m, m)) > zero_proportion
        np.fill_diagonal(pattern, False)
        ok = True
        for i in range(m):
            redraws = 0
            while not pattern[i].any():
                redraws += 1
                if redraws > 1000:
                    ok = False
                    break
                row = rng.random(m) > zero_proportion
                row[i] = False
                pattern[i] = row
            if not ok:
                break
        if not ok:
            continue
        p = pattern / pattern.sum(axis=1, keepdims=True)
        if is_irreducible(p):
            return p
    raise RuntimeError(
        f"no irreducible pattern found in {max_attempts} attempts "
        f"(m={m}, zero_proportion={zero_proportion})"
    )


def _format_value(v):
    return repr(float(v))


def save_matrix(path, a, fmt=None):
    """Write a matrix to ``path`` in Matrix Market or CSV form.

    ``fmt`` is one of ``"array"``, ``"coordinate"``, ``"csv"``; when
    None it is chosen from the extension (.csv -> csv; .mtx ->
    coordinate when more than half the entries are zero, else array).
    Values are written with shortest round-trip decimals, so the output
    is byte-stable and loads back bit-identically.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    path = str(path)
    if fmt is None:
        if path.lower().endswith(".csv"):
            fmt = "csv"
        else:
            density = np.count_nonzero(a) / max(1, a.size)
            fmt = "coordinate" if density < 0.5 else "array"
    rows, cols = a.shape
    out = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        for row in a:
            writer.writerow([_format_value(v) for v in row])
    elif fmt == "array":
        out.write("%%MatrixMarket matrix array real general\n")
        out.write(f"{rows} {cols}\n")
        for j in range(cols):  # column-major, as the format requires
            for i in range(rows):
                out.write(_format_value(a[i, j]) + "\n")
    elif fmt == "coordinate":
        nz = np.argwhere(a != 0)
        out.write("%%MatrixMarket matrix coordinate real general\n")
        out.write(f"{rows} {cols} {len(nz)}\n")
        for i, j in nz:  # row-major entry order, 1-based indices
            out.write(f"{i + 1} {j + 1} {_format_value(a[i, j])}\n")
    else:
        raise ValueError(f"unknown format {fmt!r}; use 'array', 'coordinate' or 'csv'")
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(out.getvalue())


def load_matrix(path):
    """Read a matrix written by :func:`save_matrix` (or compatible).

    Dispatches on content: Matrix Market banner or CSV. Malformed input
    raises :class:`MatrixFileError` carrying the 1-based line number.
    """
    path = str(path)
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        text = fh.read()
    if text.startswith("%%MatrixMarket"):
        return _load_matrix_market(text, path)
    return _load_csv(text, path)


def _parse_float(token, path, line_no):
    try:
        return float(token)
    except ValueError:
        raise MatrixFileError(
            f"{path}:{line_no}: cannot parse {token!r} as a number",
            path=path, line=line_no,
        ) from None


def _load_matrix_market(text, path):
    lines = text.splitlines()
    banner = lines[0].split()
    expected = ["%%MatrixMarket", "matrix", None, "real", "general"]
    if len(banner) != 5 or any(e is not None and b.lower() != e.lower() for b, e in zip(banner, expected, strict=True)) \
            or banner[2].lower() not in ("array", "coordinate"):
        raise MatrixFileError(
            f"{path}:1: unsupported Matrix Market banner {lines[0]!r} "
            "(need: matrix array|coordinate real general)",
            path=path, line=1,
        )
    layout = banner[2].lower()
    body = [
        (no, line.strip())
        for no, line in enumerate(lines[1:], start=2)
        if line.strip() and not line.lstrip().startswith("%")
    ]
    if not body:
        raise MatrixFileError(f"{path}: missing size line", path=path, line=len(lines))
    size_no, size_line = body[0]
    sizes = size_line.split()
    want = 2 if layout == "array" else 3
    if len(sizes) != want or not all(t.isdigit() for t in sizes):
        raise MatrixFileError(
            f"{path}:{size_no}: bad size line {size_line!r}", path=path, line=size_no
        )
    entries = body[1:]
    if layout == "array":
        rows, cols = int(sizes[0]), int(sizes[1])
        if len(entries) != rows * cols:
            raise MatrixFileError(
                f"{path}: expected {rows * cols} value lines, found {len(entries)}",
                path=path, line=entries[-1][0] if entries else size_no,
            )
        a = np.empty((rows, cols), dtype=np.float64)
        k = 0
        for j in range(cols):
            for i in range(rows):
                no, token = entries[k]
                if len(token.split()) != 1:
                    raise MatrixFileError(
                        f"{path}:{no}: expected one value per line, got {token!r}",
                        path=path, line=no,
                    )
                a[i, j] = _parse_float(token, path, no)
                k += 1
        return a
    rows, cols, nnz = (int(t) for t in sizes)
    if len(entries) != nnz:
        raise MatrixFileError(
            f"{path}: expected {nnz} entry lines, found {len(entries)}",
            path=path, line=entries[-1][0] if entries else size_no,
        )
    a = np.zeros((rows, cols), dtype=np.float64)
    seen = set()
    for no, line in entries:
        parts = line.split()
        if len(parts) != 3:
            raise MatrixFileError(
                f"{path}:{no}: expected 'row col value', got {line!r}", path=path, line=no
            )
        if not (parts[0].isdigit() and parts[1].isdigit()):
            raise MatrixFileError(
                f"{path}:{no}: bad indices in {line!r}", path=path, line=no
            )
        i, j = int(parts[0]), int(parts[1])
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise MatrixFileError(
                f"{path}:{no}: index ({i}, {j}) outside {rows} x {cols}",
                path=path, line=no,
            )
        if (i, j) in seen:
            raise MatrixFileError(
                f"{path}:{no}: duplicate entry for ({i}, {j})", path=path, line=no
            )
        seen.add((i, j))
        a[i - 1, j - 1] = _parse_float(parts[2], path, no)
    return a


def _load_csv(text, path):
    rows = []
    width = None
    reader = csv.reader(io.StringIO(text))
    for no, row in enumerate(reader, start=1):
        if not row:
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFileError(
                f"{path}:{no}: expected {width} columns, found {len(row)}",
                path=path, line=no,
            )
        rows.append([_parse_float(tok.strip(), path, no) for tok in row])
    if not rows:
        raise MatrixFileError(f"{path}: no data rows", path=path, line=1)
    return np.array(rows, dtype=np.float64)
