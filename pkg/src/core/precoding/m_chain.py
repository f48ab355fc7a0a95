"""M_0..M_N: the precoder/correlation products seen by the iid channel cores"""

from dataclasses import dataclass
from typing import List, Tuple
import numpy as np

from src.core.spectra import SpectralDistribution, from_gram_spectrum
from src.core.channel.network import NetworkModel
from .precoders import validate_precoders


@dataclass(frozen=True, eq=False)
class MChain:
    """
    M_0 = C_{t,1}^{1/2} P_0
    M_i = C_{t,i+1}^{1/2} P_i C_{r,i}^{1/2}   (i = 1..N−1)
    M_N = C_{r,N}^{1/2}
    """
    matrices: Tuple[np.ndarray, ...]

    @property
    def hops(self) -> int:
        return len(self.matrices) - 1

    def __getitem__(self, index: int) -> np.ndarray:
        return self.matrices[index]

    def spectra(self) -> List[SpectralDistribution]:
        """Empirical spectra of M_iᴴM_i"""
        return [from_gram_spectrum(M) for M in self.matrices]


def assemble_m_chain(model: NetworkModel, precoders) -> MChain:
    validate_precoders(model, precoders)
    matrices = getattr(precoders, 'matrices', precoders)
    stages = model.stages

    chain = [stages[0].C_t_sqrt @ matrices[0]]
    for i in range(1, model.hops):
        chain.append(stages[i].C_t_sqrt @ matrices[i] @ stages[i - 1].C_r_sqrt)
    chain.append(stages[-1].C_r_sqrt.copy())
    return MChain(matrices=tuple(chain))


__all__ = ['MChain', 'assemble_m_chain']
