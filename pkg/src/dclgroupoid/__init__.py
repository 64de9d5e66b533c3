"""dclgroupoid - discrete constrained Lagrangian mechanics on Lie groupoids."""

__version__ = "0.1.0"
