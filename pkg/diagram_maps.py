"""
Diagram Maps
The linear maps T_pi : (C^N)^{(x)k} -> (C^N)^{(x)l} attached to partitions, their
Kronecker symbols, partition vectors xi_pi, functoriality checks and the
fixed-vector test g^{(x)k} xi_pi = xi_pi.

Index tuples are 1-based (values in 1..N). Rows of T_pi are lower index tuples
and columns upper index tuples, both in row-major mixed-radix order.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

import config
from categories import horizontal_concat, involute, vertical_concat
from errors import CapacityError, DomainError, ShapeError
from partition_core import BLACK, LOWER, UPPER, ColoredWord, Partition, enumerate_partitions, join, num_blocks

logger = logging.getLogger("DiagramMaps")

DEFAULT_TOLERANCE = 1e-9


def delta(pi: Partition, upper: Sequence[int], lower: Sequence[int]) -> int:
    """
    Kronecker symbol: 1 iff every block of pi carries a constant index.

    Args:
        pi: partition in P(k, l)
        upper: k indices for the upper row
        lower: l indices for the lower row
    """
    if len(upper) != pi.k or len(lower) != pi.l:
        raise ShapeError(f"Index tuples of lengths ({len(upper)},{len(lower)}) for a ({pi.k},{pi.l}) partition")
    for block in pi.blocks:
        values = {upper[pos] if row == UPPER else lower[pos] for row, pos in block}
        if len(values) > 1:
            return 0
    return 1


def t_matrix(pi: Partition, N: int) -> np.ndarray:
    """
    Dense {0,1} matrix of T_pi, shape (N^l, N^k).

    Raises:
        CapacityError: when N^(k+l) exceeds EASYGRAM_MAX_TENSOR_ENTRIES
    """
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    legs = pi.k + pi.l
    if N ** legs > config.MAX_TENSOR_ENTRIES:
        raise CapacityError(f"T_pi with N^{legs} = {N ** legs} entries exceeds {config.MAX_TENSOR_ENTRIES}")
    if legs == 0:
        return np.ones((1, 1), dtype=np.int64)

    # axes: lower legs first, then upper legs
    grid = np.indices((N,) * legs)
    axis = {(LOWER, j): j for j in range(pi.l)}
    axis.update({(UPPER, i): pi.l + i for i in range(pi.k)})
    mask = np.ones((N,) * legs, dtype=bool)
    for block in pi.blocks:
        first = grid[axis[block[0]]]
        for leg in block[1:]:
            mask &= grid[axis[leg]] == first
    return mask.reshape(N ** pi.l, N ** pi.k).astype(np.int64)


def partition_vector(pi: Partition, N: int) -> np.ndarray:
    """xi_pi = T_pi(1) for a one-row partition, as a flat vector of length N^l."""
    if not pi.is_one_row:
        raise ShapeError("Partition vectors are defined for one-row partitions")
    return t_matrix(pi, N)[:, 0]


# ============ FUNCTORIALITY ============

@dataclass
class FunctorialityReport:
    pi: str
    sigma: str
    N: int
    tensor: bool
    involution: bool
    composition: Optional[bool] = None
    loops: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.tensor and self.involution and self.composition is not False

    def to_json(self) -> Dict:
        return {
            "pi": self.pi, "sigma": self.sigma, "N": self.N,
            "tensor": self.tensor, "composition": self.composition,
            "involution": self.involution, "loops": self.loops, "passed": self.passed,
        }


def check_functoriality(pi: Partition, sigma: Partition, N: int) -> FunctorialityReport:
    """
    Check T_pi (x) T_sigma = T_[pi sigma], T_pi T_sigma = N^c T_[sigma over pi]
    (when sigma's lower row matches pi's upper row) and T_pi^t = T_pi*.
    """
    t_pi, t_sigma = t_matrix(pi, N), t_matrix(sigma, N)
    tensor = np.array_equal(np.kron(t_pi, t_sigma), t_matrix(horizontal_concat(pi, sigma), N))
    involution = np.array_equal(t_pi.T, t_matrix(involute(pi), N))
    report = FunctorialityReport(str(pi), str(sigma), N, tensor, involution)
    if sigma.l == pi.k and sigma.lower.letters == pi.upper.letters:
        glued = vertical_concat(pi, sigma)
        report.loops = glued.loops
        report.composition = np.array_equal(t_pi @ t_sigma, N ** glued.loops * t_matrix(glued.result, N))
    if not report.passed:
        logger.info(f"Functoriality failed for pi={pi}, sigma={sigma}, N={N}")
    return report


def gram_consistency(k: int, N: int) -> bool:
    """<xi_pi, xi_sigma> = N^{|pi v sigma|} over all of P(k)."""
    members = enumerate_partitions(k)
    vectors = {pi: partition_vector(pi, N) for pi in members}
    for pi, sigma in itertools.product(members, repeat=2):
        if int(vectors[pi] @ vectors[sigma]) != N ** num_blocks(join(pi, sigma)):
            logger.info(f"Gram mismatch at {pi}, {sigma}, N={N}")
            return False
    return True


# ============ FIXED VECTORS ============

def _conjugate(g: np.ndarray) -> np.ndarray:
    if g.dtype == object:
        return np.vectorize(lambda z: z.conjugate(), otypes=[object])(g)
    return np.conj(g)


def apply_tensor_power(g: np.ndarray, vector: np.ndarray, word: ColoredWord) -> np.ndarray:
    """g on white legs and conj(g) on black legs of a vector in (C^N)^{(x)len(word)}."""
    N = g.shape[0]
    k = len(word)
    tensor = np.asarray(vector).reshape((N,) * k) if k else np.asarray(vector)
    conj = _conjugate(g) if BLACK in word.letters else None
    for axis, letter in enumerate(word.letters):
        matrix = conj if letter == BLACK else g
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)
    return tensor.reshape(-1)


def is_fixed_vector(pi: Partition, g: np.ndarray, tolerance: Optional[float] = None) -> bool:
    """
    True iff g^{(x)k} xi_pi = xi_pi, black legs acted on by the conjugate of g.

    Exact comparison for object (exact) entries; float entries are compared
    within `tolerance` (default 1e-9).
    """
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ShapeError(f"Expected a square matrix, got shape {g.shape}")
    if not pi.is_one_row:
        raise ShapeError("Fixed vectors are defined for one-row partitions")
    N = g.shape[0]
    xi = partition_vector(pi, N)
    image = apply_tensor_power(g, xi.astype(object) if g.dtype == object else xi, pi.lower)
    if g.dtype == object and tolerance is None:
        return all(a == b for a, b in zip(image, xi))
    limit = DEFAULT_TOLERANCE if tolerance is None else tolerance
    return float(np.linalg.norm(image.astype(complex) - xi)) < limit


def random_unitary(N: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a complex Gaussian matrix."""
    z = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


@dataclass
class ColorConventionReport:
    N: int
    samples: int
    matched_fixed: bool
    same_color_broken: bool
    worst_residual: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.matched_fixed and self.same_color_broken


def check_color_convention(N: int = 3, samples: int = 200, seed: int = 0) -> ColorConventionReport:
    """
    The white-black pairing on the word ob is fixed by every u (x) conj(u);
    the white-white pairing on oo is not.
    """
    rng = np.random.default_rng(seed)
    matched = Partition.one_row([[0, 1]], "ob")
    same = Partition.one_row([[0, 1]], "oo")
    xi = partition_vector(matched, N)
    worst, broken = 0.0, False
    for _ in range(samples):
        u = random_unitary(N, rng)
        residual = float(np.linalg.norm(apply_tensor_power(u, xi, matched.lower) - xi))
        worst = max(worst, residual)
        if not is_fixed_vector(same, u):
            broken = True
    report = ColorConventionReport(N, samples, worst < DEFAULT_TOLERANCE, broken, worst)
    logger.info(f"Color convention at N={N}: residual {worst:.2e}, same-color broken={broken}")
    return report
