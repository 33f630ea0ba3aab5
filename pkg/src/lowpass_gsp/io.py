"""CSV and JSON file formats.

Matrices are plain comma-separated decimals without a header, written with
17 significant digits so that files round-trip exactly and identical data
gives identical bytes.
"""
import json

import numpy as np

from .errors import ValidationError
from .graph import Graph

FMT = "%.17g"


def read_matrix_csv(path, ndmin=2):
    try:
        M = np.loadtxt(path, delimiter=",", ndmin=ndmin)
    except ValueError as exc:
        raise ValidationError(f"{path}: not a numeric CSV matrix ({exc})") from exc
    return M


def write_matrix_csv(path, M):
    M = np.asarray(M, dtype=float)
    np.savetxt(path, M.reshape(M.shape[0], -1), fmt=FMT, delimiter=",")


def read_adjacency_csv(path):
    """Load an adjacency matrix; reject asymmetry beyond 1e-12."""
    W = read_matrix_csv(path)
    if W.shape[0] != W.shape[1]:
        raise ValidationError(f"{path}: adjacency must be square, got {W.shape}")
    if np.max(np.abs(W - W.T)) > 1e-12:
        raise ValidationError(f"{path}: adjacency is not symmetric within 1e-12")
    return Graph(W)


def write_adjacency_csv(path, g):
    write_matrix_csv(path, g.weights if isinstance(g, Graph) else g)


def write_spectrum_csv(path, lambdas):
    lam = np.asarray(lambdas, dtype=float)
    rows = np.column_stack([np.arange(lam.size), lam])
    np.savetxt(path, rows, fmt=["%d", FMT], delimiter=",", header="index,lambda", comments="")


def read_trajectory_csv(path):
    """n-by-T matrix with a ``t0,t1,...`` header row."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    if not header or not header[0].startswith("t"):
        raise ValidationError(f"{path}: missing trajectory header")
    return np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


def write_trajectory_csv(path, Y):
    Y = np.asarray(Y, dtype=float)
    header = ",".join(f"t{t}" for t in range(Y.shape[1]))
    np.savetxt(path, Y, fmt=FMT, delimiter=",", header=header, comments="")


def write_assignment_csv(path, labels):
    labels = np.asarray(labels, dtype=int)
    rows = np.column_stack([np.arange(labels.size), labels])
    np.savetxt(path, rows, fmt="%d", delimiter=",", header="node,label", comments="")


def read_assignment_csv(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1, dtype=int, ndmin=2)
    labels = np.empty(data.shape[0], dtype=int)
    labels[data[:, 0]] = data[:, 1]
    return labels


def read_mask_csv(path):
    M = read_matrix_csv(path)
    if not np.all((M == 0) | (M == 1)):
        raise ValidationError(f"{path}: mask entries must be 0 or 1")
    return M.astype(bool)


def write_mask_csv(path, mask):
    np.savetxt(path, np.asarray(mask, dtype=int), fmt="%d", delimiter=",")


def write_detection_csv(path, results):
    with open(path, "w") as fh:
        fh.write("column_index,statistic,threshold,decision\n")
        for j, r in enumerate(results):
            fh.write(f"{j},{FMT % r.statistic},{FMT % r.threshold},{r.decision.value}\n")


def write_localization_csv(path, located):
    """Long format: one ``column_index,node`` row per flagged node."""
    with open(path, "w") as fh:
        fh.write("column_index,node\n")
        for j, nodes in enumerate(located):
            for i in nodes:
                fh.write(f"{j},{int(i)}\n")


def dump_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)
