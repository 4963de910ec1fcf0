# homology.py

import logging
import os
from typing import List, Optional, Sequence

import config
from exceptions import BoundaryError, ComparisonError, ParseError
from integer_matrix import SparseIntMatrix, invariant_factors
from models import ChainComplex, HomologyComparison, HomologyGroup, HomologyResult, SimplicialSet
from simplicial import require_depth
from utils import parallel_map

logger = logging.getLogger(__name__)


def boundary_matrix(X: SimplicialSet, k: int, rows: Sequence[str], cols: Sequence[str]) -> SparseIntMatrix:
    """Alternating face sum C_k -> C_(k-1); faces outside `rows` (degenerate ones) contribute zero."""
    row_index = {y: r for r, y in enumerate(rows)}
    matrix = SparseIntMatrix(len(rows), len(cols))
    if k == 0:
        return matrix
    for c, x in enumerate(cols):
        for i, y in enumerate(X.faces[k][x]):
            r = row_index.get(y)
            if r is not None:
                matrix[r, c] = matrix[r, c] + (-1) ** i
    return matrix


def normalized_chains(X: SimplicialSet, max_deg: Optional[int] = None) -> ChainComplex:
    """
    Normalized chains of X in degrees 0..max_deg+1 (the extra degree supplies
    the image for H_max_deg). Bases are the nondegenerate simplices.
    """
    d = config.DEFAULT_HOMOLOGY_THROUGH if max_deg is None else max_deg
    require_depth(X, d + 1)
    bases = tuple(X.nondegenerate(k) for k in range(d + 2))
    boundaries = parallel_map(
        lambda k: boundary_matrix(X, k, bases[k - 1] if k else (), bases[k]), range(d + 2))
    C = ChainComplex(bases, tuple(boundaries), d, name=X.name)
    check_boundaries(C)
    logger.debug(f"Chains of {X.name} through degree {d}: basis sizes {C.basis_sizes()}")
    return C


def check_boundaries(C: ChainComplex) -> None:
    """Raises BoundaryError unless every composite d_(k-1) d_k vanishes and shapes agree."""
    for k, matrix in enumerate(C.boundaries):
        expected = (len(C.bases[k - 1]) if k else 0, len(C.bases[k]))
        if matrix.shape != expected:
            raise BoundaryError(f"{C.name}: d_{k} has shape {matrix.shape}, expected {expected}")
    for k in range(2, len(C.boundaries)):
        if not (C.boundaries[k - 1] @ C.boundaries[k]).is_zero():
            raise BoundaryError(f"{C.name}: d_{k - 1} d_{k} is not zero")


def homology(C: ChainComplex, reduced: bool = False) -> HomologyResult:
    """H_k = ker d_k / im d_(k+1) for k <= top_degree, from invariant factors."""
    check_boundaries(C)
    factors = parallel_map(invariant_factors, C.boundaries)
    groups = []
    for k in range(C.top_degree + 1):
        rank_out = len(factors[k])
        image = [abs(f) for f in factors[k + 1]]
        betti = len(C.bases[k]) - rank_out - len(image)
        if reduced and k == 0:
            betti = max(betti - 1, 0)
        groups.append(HomologyGroup(betti, tuple(sorted(f for f in image if f > 1))))
    result = HomologyResult(tuple(groups), reduced)
    logger.info(f"{'Reduced h' if reduced else 'H'}omology of {C.name}: {', '.join(result.describe())}")
    return result


def homology_of(X: SimplicialSet, through: Optional[int] = None, reduced: bool = False) -> HomologyResult:
    return homology(normalized_chains(X, through), reduced)


def compare_homology(A: HomologyResult, B: HomologyResult, through: Optional[int] = None) -> HomologyComparison:
    """Degreewise equality of Betti numbers and torsion through `through`."""
    if A.reduced != B.reduced:
        raise ComparisonError("cannot compare reduced with unreduced homology")
    through = min(A.through_degree, B.through_degree) if through is None else through
    if through > A.through_degree or through > B.through_degree:
        raise ComparisonError(
            f"comparison through degree {through}, but results stop at {A.through_degree} and {B.through_degree}")
    first = next((k for k in range(through + 1) if A.groups[k] != B.groups[k]), None)
    return HomologyComparison(
        through, first is None, first,
        tuple(g.describe() for g in A.groups[:through + 1]),
        tuple(g.describe() for g in B.groups[:through + 1]),
    )


# --- Matrix export ---

def export_matrices(C: ChainComplex, directory: str, prefix: str = "") -> List[str]:
    """Writes d_k as `<prefix>d<k>.txt` in triplet text, with a comment line naming the degrees."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for k, matrix in enumerate(C.boundaries):
        path = os.path.join(directory, f"{prefix}d{k}.txt")
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(f"# {C.name}: d_{k} from C_{k} (columns) to C_{k - 1} (rows)\n")
            f.write(matrix.to_triplet_text())
        paths.append(path)
    logger.info(f"Exported {len(paths)} boundary matrices of {C.name} to {directory}")
    return paths


def load_matrix(path: str) -> SparseIntMatrix:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read matrix file: {e.strerror}", path) from e
    try:
        return SparseIntMatrix.from_triplet_text(text)
    except ValueError as e:
        raise ParseError(str(e), path) from e
