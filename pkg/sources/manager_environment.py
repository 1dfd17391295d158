from os import getenv

from .manager_base import BaseEnvironmentManager


class EnvironmentManager(BaseEnvironmentManager):
    """Class for handling environmental variables"""

    SEED = BaseEnvironmentManager.non_negative_int(getenv("SHIFTS_SEED", "0"), "SHIFTS_SEED")
    TRIALS = BaseEnvironmentManager.non_negative_int(getenv("SHIFTS_TRIALS", "50"), "SHIFTS_TRIALS")
    TOLERANCE = BaseEnvironmentManager.positive_float(getenv("SHIFTS_TOLERANCE", "1e-8"), "SHIFTS_TOLERANCE")

    REPLAY_DIR = getenv("SHIFTS_REPLAY_DIR", "replays")
    SYMBOL_VERSION = getenv("SHIFTS_SYMBOL_VERSION", "1")

    DEBUG_LOGGING = BaseEnvironmentManager.is_truthy(getenv("SHIFTS_DEBUG_LOGGING", "0"))
    DEBUG_RUN = BaseEnvironmentManager.is_truthy(getenv("DEBUG_RUN", "False"))

    @classmethod
    def init(cls):
        """Re-read the environment (after a `.env` file has been loaded)"""
        cls.SEED = cls.non_negative_int(getenv("SHIFTS_SEED", str(cls.SEED)), "SHIFTS_SEED")
        cls.TRIALS = cls.non_negative_int(getenv("SHIFTS_TRIALS", str(cls.TRIALS)), "SHIFTS_TRIALS")
        cls.TOLERANCE = cls.positive_float(getenv("SHIFTS_TOLERANCE", str(cls.TOLERANCE)), "SHIFTS_TOLERANCE")
        cls.REPLAY_DIR = getenv("SHIFTS_REPLAY_DIR", cls.REPLAY_DIR)
        cls.SYMBOL_VERSION = getenv("SHIFTS_SYMBOL_VERSION", cls.SYMBOL_VERSION)
        cls.DEBUG_LOGGING = cls.is_truthy(getenv("SHIFTS_DEBUG_LOGGING", str(cls.DEBUG_LOGGING)))
        cls.DEBUG_RUN = cls.is_truthy(getenv("DEBUG_RUN", str(cls.DEBUG_RUN)))
