"""Shared tiny reference service used by the golden-transcript recorder
and the live conformance server.

The configuration matches the protocol test suite of the core package so
transcripts recorded here are the reference behavior.
"""

from flowworld import server as SV
from flowworld import training as TR
from flowworld.model import ModelConfig
from flowworld.moae import MoaeConfig
from flowworld.rollout import SamplerConfig
from flowworld.worlds import WorldSpec


def tiny_train_state(seed=0):
    mc = ModelConfig(hidden_dim=16, blocks=1, heads=2, patch=4, height=8, width=8,
                     chunk_frames=2, max_history=4, recent_window=2,
                     compress_factor=4, ffn_mult=2, time_dim=8)
    moc = MoaeConfig(out_dim=16, shared_dim=6, hidden_dim=8, n_experts=2, top_k=1)
    tc = TR.TrainConfig(batch_size=2, h_min=1, h_max=3, traj_len=8,
                        n_trajectories=4, seed=seed)
    world = WorldSpec(kind="scroll", height=8, width=8, seed=seed + 50, n_waves=4)
    return TR.init_state(mc, moc, tc, world)


def make_service(max_sessions=4):
    cfg = SV.ServiceConfig(checkpoint_path="unused", max_sessions=max_sessions,
                           sampler=SamplerConfig(steps=2))
    return SV.ServiceState(cfg, tiny_train_state())
