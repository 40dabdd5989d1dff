"""Shards, the shard intersection order, Cambrian congruences and noncrossing partitions of finite Coxeter groups."""

__version__ = "0.1.0"
