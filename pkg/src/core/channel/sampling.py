"""Seeded channel sampling"""

from typing import List
import numpy as np

from .network import ChannelStage, NetworkModel

CHANNEL_STREAM = 0
PRECODER_STREAM = 1


def derive_rng(master_seed: int, trial: int, stage: int, stream: int = CHANNEL_STREAM) -> np.random.Generator:
    """Independent generator keyed by (seed, trial, stage); any draw is reproducible alone."""
    entropy = [int(master_seed), int(trial), int(stage)]
    if stream != CHANNEL_STREAM:
        entropy.append(int(stream))
    return np.random.default_rng(np.random.SeedSequence(entropy))


def sample_theta(stage: ChannelStage, rng: np.random.Generator) -> np.ndarray:
    """k_out×k_in circularly-symmetric Gaussian matrix with E|θ_kl|² = 1/k_out"""
    shape = (stage.k_out, stage.k_in)
    scale = np.sqrt(0.5 / stage.k_out)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sample_channel(stage: ChannelStage, rng: np.random.Generator) -> np.ndarray:
    """H = C_r^{1/2} Θ C_t^{1/2}"""
    return correlate(stage, sample_theta(stage, rng))


def correlate(stage: ChannelStage, theta: np.ndarray) -> np.ndarray:
    channel = theta
    if not stage.identity_receive:
        channel = stage.C_r_sqrt @ channel
    if not stage.identity_transmit:
        channel = channel @ stage.C_t_sqrt
    return channel


def sample_thetas(model: NetworkModel, master_seed: int, trial: int) -> List[np.ndarray]:
    """Θ_1..Θ_N for one trial, each hop from its own derived stream"""
    return [
        sample_theta(stage, derive_rng(master_seed, trial, stage.index))
        for stage in model.stages
    ]


__all__ = [
    'derive_rng',
    'sample_theta',
    'sample_channel',
    'sample_thetas',
    'correlate',
    'CHANNEL_STREAM',
    'PRECODER_STREAM'
]
