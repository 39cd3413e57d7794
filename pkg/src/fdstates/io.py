"""
File formats: CSV tables, binary PGM heatmaps and JSON sidecars.

CSV floats use 17 significant digits; JSON floats use Python's shortest
round-trip representation. Both are deterministic for identical inputs.
"""
import csv
import json
import os

import numpy as np

SCHEMA_VERSION = 1
FLOAT_FMT = ".17g"


def fmt(x):
    return format(float(x), FLOAT_FMT)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, (str, int, np.integer)) else fmt(v) for v in row])


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not np.isfinite(v):
            return None
        return v
    if isinstance(obj, complex):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def write_json(path, payload):
    body = {"schema_version": SCHEMA_VERSION}
    body.update(_jsonable(payload))
    with open(path, "w") as fh:
        json.dump(body, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def state_rows(state):
    return [(n, a.real, a.imag, abs(a) ** 2) for n, a in enumerate(state.amps)]


def write_state_csv(path, state):
    write_csv(path, ["n", "re", "im", "prob"], state_rows(state))


def write_grid_csv(path, grid):
    """Header row carries the theta_m values; each following row is one n."""
    header = ["n\\theta_m"] + [fmt(t) for t in grid.thetas]
    rows = [[n] + list(grid.values[n]) for n in range(grid.s + 1)]
    write_csv(path, header, rows)


def pgm_bytes(values, vmin=None, vmax=None, scale=1):
    """8-bit P5 image, darker = higher: vmax maps to 0 and vmin to 255.

    Rows of ``values`` become image rows top to bottom; each cell is a
    ``scale`` x ``scale`` block.
    """
    v = np.asarray(values, dtype=float)
    vmin = float(v.min()) if vmin is None else vmin
    vmax = float(v.max()) if vmax is None else vmax
    if vmax > vmin:
        pix = np.rint(255.0 * (vmax - v) / (vmax - vmin))
    else:
        pix = np.full(v.shape, 127.0)
    pix = np.clip(pix, 0, 255).astype(np.uint8)
    if scale > 1:
        pix = np.kron(pix, np.ones((scale, scale), dtype=np.uint8))
    h, w = pix.shape
    return b"P5\n%d %d\n255\n" % (w, h) + pix.tobytes()


def read_pgm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w)


def write_pgm(path, values, scale=1):
    v = np.asarray(values, dtype=float)
    vmin, vmax = float(v.min()), float(v.max())
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(v, vmin, vmax, scale))
    return vmin, vmax


def default_output_dir():
    return os.environ.get("FDSTATES_OUT", ".")
