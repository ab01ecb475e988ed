"""Fully asynchronous unsourced random access over a Gaussian MAC with on-off
division multiple access: transmit chain, channel, double sliding-window
receiver, and a Monte Carlo evaluation harness."""

from . import channel, config, detector, harness, odma, polar, receiver

__all__ = ["channel", "config", "detector", "harness", "odma", "polar", "receiver"]
