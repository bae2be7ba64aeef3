"""File formats for MUB sets and density matrices.

MUB set (JSON):  {"d": int, "bases": [basis, ...]} where a basis is a list
of d vectors and a vector a list of d [re, im] pairs.  Imports are verified
and rejected when the set is not mutually unbiased.

Density matrix (JSON):  {"dim": int, "re": [[...]], "im": [[...]]};
validated (hermitian, unit trace, positive) on load.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .mubs import Basis, MubSet, verify_mub_set
from .qmath import validate_density_matrix


class FileFormatError(ValueError):
    """The file is malformed or fails validation."""


def save_mub_set(path, mub: MubSet) -> None:
    payload = {
        "d": mub.dim,
        "bases": [
            [[[float(a.real), float(a.imag)] for a in vec] for vec in basis.vectors]
            for basis in mub
        ],
    }
    Path(path).write_text(json.dumps(payload))


def load_mub_set(path, verify: bool = True, tol: float | None = None) -> MubSet:
    try:
        payload = json.loads(Path(path).read_text())
        d = int(payload["d"])
        raw = payload["bases"]
        bases = []
        for entry in raw:
            arr = np.asarray(entry, dtype=float)
            if arr.shape != (d, d, 2):
                raise FileFormatError(
                    f"basis shape {arr.shape} does not match d = {d}"
                )
            bases.append(Basis(arr[..., 0] + 1j * arr[..., 1]))
    except FileFormatError:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"malformed MUB file {path}: {exc}") from exc
    mub = MubSet(tuple(bases))
    if verify:
        report = verify_mub_set(mub, tol=tol)
        if not report.ok:
            raise FileFormatError(
                f"MUB file {path} failed verification: orthonormality defect "
                f"{report.worst_orthonormality_defect:.3e}, unbiasedness defect "
                f"{report.worst_unbiasedness_defect:.3e} at pair {report.failing_pair}"
            )
    return mub


def save_density_matrix(path, rho: np.ndarray) -> None:
    rho = np.asarray(rho, dtype=complex)
    payload = {
        "dim": rho.shape[0],
        "re": rho.real.tolist(),
        "im": rho.imag.tolist(),
    }
    Path(path).write_text(json.dumps(payload))


def load_density_matrix(path, validate: bool = True) -> np.ndarray:
    try:
        payload = json.loads(Path(path).read_text())
        dim = int(payload["dim"])
        re = np.asarray(payload["re"], dtype=float)
        im = np.asarray(payload["im"], dtype=float)
        if re.shape != (dim, dim) or im.shape != (dim, dim):
            raise FileFormatError(
                f"matrix shape {re.shape}/{im.shape} does not match dim = {dim}"
            )
    except FileFormatError:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"malformed density-matrix file {path}: {exc}") from exc
    rho = re + 1j * im
    if validate:
        report = validate_density_matrix(rho)
        if not report.ok:
            raise FileFormatError(
                f"density-matrix file {path} failed validation: "
                f"hermiticity defect {report.hermiticity_defect:.3e}, "
                f"trace defect {report.trace_defect:.3e}, "
                f"min eigenvalue {report.min_eigenvalue:.3e}"
            )
    return rho
