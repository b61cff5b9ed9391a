"""Power graphs of finite groups and the power index machinery built on them."""

__version__ = "0.1.0"
