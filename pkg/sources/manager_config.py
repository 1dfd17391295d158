from dataclasses import dataclass, field
from typing import List, Optional

from .manager_debug import DebugManager as DBM
from .manager_environment import EnvironmentManager as EM

COMMANDS = ("validate", "characters", "quotient", "components", "analyze", "examples", "fuzz")
OUTPUT_FORMATS = ("text", "json")
PRESETS = ("minus", "full")


@dataclass
class Configuration:
    """Validated run configuration of one command line invocation"""

    _command: str = "validate"
    _paths: List[str] = field(default_factory=list)
    _u: Optional[str] = None
    _measure: Optional[str] = None
    _phi: Optional[str] = None
    _random: Optional[int] = None
    _preset: Optional[str] = None
    _seed: int = field(default_factory=lambda: EM.SEED)
    _trials: int = field(default_factory=lambda: EM.TRIALS)
    _generated: Optional[int] = None
    _tolerance: float = field(default_factory=lambda: EM.TOLERANCE)
    _output: str = "text"

    @property
    def command(self) -> str:
        return self._command

    @command.setter
    def command(self, value: str) -> None:
        if value not in COMMANDS:
            raise ValueError(f"Unknown command {value!r}, expected one of {', '.join(COMMANDS)}")
        self._command = value
        DBM.i("Command set to: $value", value=value)

    @property
    def paths(self) -> List[str]:
        return self._paths

    @paths.setter
    def paths(self, value: List[str]) -> None:
        if any(not isinstance(path, str) or not path.strip() for path in value):
            raise ValueError("Input paths cannot be empty")
        self._paths = [path.strip() for path in value]

    @property
    def path(self) -> str:
        if not self._paths:
            raise ValueError(f"Command {self._command!r} needs an input .sgp file")
        return self._paths[0]

    @property
    def u(self) -> Optional[str]:
        return self._u

    @u.setter
    def u(self, value: Optional[str]) -> None:
        if value is not None and not value.strip():
            raise ValueError("Element label cannot be empty")
        self._u = None if value is None else value.strip()

    @property
    def measure(self) -> Optional[str]:
        return self._measure

    @measure.setter
    def measure(self, value: Optional[str]) -> None:
        self._measure = value

    @property
    def phi(self) -> Optional[str]:
        return self._phi

    @phi.setter
    def phi(self, value: Optional[str]) -> None:
        self._phi = value

    @property
    def random(self) -> Optional[int]:
        return self._random

    @random.setter
    def random(self, value: Optional[int]) -> None:
        if value is not None and value < 1:
            raise ValueError("Random measures need at least one atom")
        self._random = value

    @property
    def preset(self) -> Optional[str]:
        return self._preset

    @preset.setter
    def preset(self, value: Optional[str]) -> None:
        if value is not None and value not in PRESETS:
            raise ValueError(f"Preset must be one of {', '.join(PRESETS)}")
        self._preset = value

    @property
    def seed(self) -> int:
        return self._seed

    @seed.setter
    def seed(self, value: int) -> None:
        if not isinstance(value, int) or value < 0:
            raise ValueError("Seed must be a non-negative integer")
        self._seed = value
        DBM.i("Seed set to: $value", value=value)

    @property
    def trials(self) -> int:
        return self._trials

    @trials.setter
    def trials(self, value: int) -> None:
        if not isinstance(value, int) or value < 1:
            raise ValueError("Trials must be a positive integer")
        self._trials = value

    @property
    def generated(self) -> Optional[int]:
        return self._generated

    @generated.setter
    def generated(self, value: Optional[int]) -> None:
        if value is not None and value < 1:
            raise ValueError("Generated instance count must be positive")
        self._generated = value

    @property
    def tolerance(self) -> float:
        return self._tolerance

    @tolerance.setter
    def tolerance(self, value: float) -> None:
        if not value > 0:
            raise ValueError("Tolerance must be positive")
        self._tolerance = float(value)
        DBM.i("Tolerance set to: $value", value=value)

    @property
    def output(self) -> str:
        return self._output

    @output.setter
    def output(self, value: str) -> None:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"Output format must be one of {', '.join(OUTPUT_FORMATS)}")
        self._output = value

    @property
    def as_json(self) -> bool:
        return self._output == "json"
