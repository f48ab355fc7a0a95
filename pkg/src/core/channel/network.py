"""Multi-hop network description: dimensions, correlated stages, SNR and budgets"""

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple, Union
import numpy as np

from src.core.errors import InputError
from .correlation import (
    CorrelationSpec,
    check_hermitian_psd,
    decreasing_eigh,
    hermitian_sqrt,
    is_identity,
    make_correlation
)


@dataclass(frozen=True, eq=False)
class ChannelStage:
    """
    Hop i of the chain: H_i = C_r^{1/2} Θ_i C_t^{1/2}, mapping k_in → k_out.

    Eigendecompositions are cached with eigenvalues in decreasing order.
    """
    index: int
    k_in: int
    k_out: int
    C_t: np.ndarray
    C_r: np.ndarray
    U_t: np.ndarray = field(init=False)
    lambda_t: np.ndarray = field(init=False)
    U_r: np.ndarray = field(init=False)
    lambda_r: np.ndarray = field(init=False)
    C_t_sqrt: np.ndarray = field(init=False)
    C_r_sqrt: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.C_t.shape != (self.k_in, self.k_in):
            raise InputError(f"Stage {self.index}: C_t shape {self.C_t.shape} != ({self.k_in}, {self.k_in})")
        if self.C_r.shape != (self.k_out, self.k_out):
            raise InputError(f"Stage {self.index}: C_r shape {self.C_r.shape} != ({self.k_out}, {self.k_out})")
        check_hermitian_psd(self.C_t)
        check_hermitian_psd(self.C_r)

        lambda_t, U_t = decreasing_eigh(self.C_t)
        lambda_r, U_r = decreasing_eigh(self.C_r)
        object.__setattr__(self, 'lambda_t', lambda_t)
        object.__setattr__(self, 'U_t', U_t)
        object.__setattr__(self, 'lambda_r', lambda_r)
        object.__setattr__(self, 'U_r', U_r)
        object.__setattr__(self, 'C_t_sqrt', hermitian_sqrt(self.C_t))
        object.__setattr__(self, 'C_r_sqrt', hermitian_sqrt(self.C_r))

    @property
    def identity_transmit(self) -> bool:
        return is_identity(self.C_t)

    @property
    def identity_receive(self) -> bool:
        return is_identity(self.C_r)


@dataclass(frozen=True, eq=False)
class NetworkModel:
    """N-hop chain with k_0..k_N antennas, receiver SNR η and per-node budgets 𝒫_0..𝒫_{N−1}"""
    dims: Tuple[int, ...]
    stages: Tuple[ChannelStage, ...]
    eta: float
    budgets: Tuple[float, ...]

    def __post_init__(self):
        if len(self.dims) < 2:
            raise InputError("A network needs at least one hop (two levels)")
        if any(k < 1 for k in self.dims):
            raise InputError(f"Antenna counts must be positive, got {self.dims}")
        if len(self.stages) != self.hops:
            raise InputError(f"Expected {self.hops} stages, got {len(self.stages)}")
        for i, stage in enumerate(self.stages, start=1):
            if (stage.k_in, stage.k_out) != (self.dims[i - 1], self.dims[i]):
                raise InputError(
                    f"Stage {i} maps {stage.k_in}→{stage.k_out}, "
                    f"expected {self.dims[i - 1]}→{self.dims[i]}"
                )
        if not self.eta > 0:
            raise InputError(f"SNR η must be positive, got {self.eta}")
        if len(self.budgets) != self.hops:
            raise InputError(f"Expected {self.hops} power budgets, got {len(self.budgets)}")
        if any(not p > 0 for p in self.budgets):
            raise InputError(f"Power budgets must be positive, got {self.budgets}")

    @property
    def hops(self) -> int:
        return len(self.dims) - 1

    @property
    def rho(self) -> Tuple[float, ...]:
        """ρ_i = k_i/k_N for i = 0..N, and ρ_{N+1} = 1"""
        k_last = float(self.dims[-1])
        return tuple(k / k_last for k in self.dims) + (1.0,)

    @property
    def noise_variance(self) -> float:
        return 1.0 / self.eta

    def with_eta(self, eta: float) -> "NetworkModel":
        return replace(self, eta=eta)


CorrelationInput = Union[CorrelationSpec, Sequence[CorrelationSpec], None]


def _per_stage(specs: CorrelationInput, hops: int, side: str) -> List[CorrelationSpec]:
    if specs is None:
        return [CorrelationSpec.identity()] * hops
    if isinstance(specs, CorrelationSpec):
        return [specs] * hops
    specs = list(specs)
    if len(specs) != hops:
        raise InputError(f"Expected {hops} {side} correlation specs, got {len(specs)}")
    return specs


def make_network_model(
    dims: Sequence[int],
    eta: float = 1.0,
    transmit: CorrelationInput = None,
    receive: CorrelationInput = None,
    budgets: Optional[Sequence[float]] = None
) -> NetworkModel:
    """
    Build a NetworkModel from dimensions and correlation specs.

    `transmit`/`receive` take one spec for every hop or a list with one per
    hop. Budgets default to 𝒫_i = k_i (unit average power per antenna).
    """
    dims = tuple(int(k) for k in dims)
    hops = len(dims) - 1
    if hops < 1:
        raise InputError("A network needs at least one hop (two levels)")

    transmit_specs = _per_stage(transmit, hops, 'transmit')
    receive_specs = _per_stage(receive, hops, 'receive')

    stages = tuple(
        ChannelStage(
            index=i,
            k_in=dims[i - 1],
            k_out=dims[i],
            C_t=make_correlation(transmit_specs[i - 1], dims[i - 1]),
            C_r=make_correlation(receive_specs[i - 1], dims[i])
        )
        for i in range(1, hops + 1)
    )

    if budgets is None:
        budgets = [float(k) for k in dims[:-1]]

    return NetworkModel(
        dims=dims,
        stages=stages,
        eta=float(eta),
        budgets=tuple(float(p) for p in budgets)
    )


def uniform_dims(antennas: int, hops: int) -> Tuple[int, ...]:
    """k_0 = … = k_N = K"""
    return (int(antennas),) * (hops + 1)


__all__ = ['ChannelStage', 'NetworkModel', 'make_network_model', 'uniform_dims']
