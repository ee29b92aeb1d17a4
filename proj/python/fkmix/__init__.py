from ._fkmix import *  # noqa: F401,F403
from ._fkmix import __doc__  # noqa: F401
