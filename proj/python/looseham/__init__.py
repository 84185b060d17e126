from looseham._looseham import *  # noqa: F401,F403
