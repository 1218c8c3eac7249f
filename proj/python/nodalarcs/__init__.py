from ._nodalarcs import *  # noqa: F401,F403
