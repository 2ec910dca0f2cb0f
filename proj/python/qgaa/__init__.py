from ._qgaa import *  # noqa: F401,F403
