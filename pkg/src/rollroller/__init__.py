"""
rollroller: planar dynamics, hydraulic actuation and hybrid pipe switching of a spherical
rolling robot whose core travels through a circular momentum maker and an elliptic
gravity breaker.
"""

__version__ = "0.1.0"
