"""Quantum arithmetic circuit construction and resource analysis package."""
