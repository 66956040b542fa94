import logging
import typing as t
from pathlib import Path

import pydantic_settings as ps
import yaml
from pydantic import Field

from .constants import BASE_CASE_MAX_UNDECIDED, BRUTE_FORCE_MAX_VERTICES, KNOWN_CONFIG_FILES

logger = logging.getLogger(__name__)

SolveMode = t.Literal["decide", "min", "max"]


def _has_section(path: Path, section: t.Optional[str]) -> bool:
    """True when ``path`` is a YAML file holding a mapping under ``section`` (any file when no section)."""
    if not path.is_file():
        return False
    if section is None:
        return True
    with path.open(encoding="utf-8") as f:
        document = yaml.safe_load(f)
    return isinstance(document, dict) and isinstance(document.get(section), dict)


class _SectionYamlSource(ps.YamlConfigSettingsSource):
    """One section of one YAML file. A missing file or section contributes no values."""

    def __init__(self, settings_cls: t.Type[ps.BaseSettings], yaml_file: Path, section: t.Optional[str]):
        self._present = _has_section(yaml_file, section)
        if self._present:
            logger.debug("Reading section %r of %s", section, yaml_file)
        super().__init__(settings_cls, yaml_file=yaml_file, yaml_config_section=section if self._present else None)

    def __call__(self) -> t.Dict[str, t.Any]:
        return super().__call__() if self._present else {}


class YamlSettings(ps.BaseSettings):
    """
    Settings read from a section of the known YAML config files.

    Values come from explicit arguments first, then from the files in ``KNOWN_CONFIG_FILES`` in
    order, then from the environment. Unknown keys are ignored, so several tools can share one file.

    Example:
        ```python
        class BenchDefaults(YamlSettings):
            __yml_section__: ClassVar[str] = "bench"

            repeat: int = 1
        ```
    """

    __yml_section__: t.ClassVar[t.Optional[str]] = None
    model_config = ps.SettingsConfigDict(extra="ignore")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: t.Type[ps.BaseSettings],
        init_settings: ps.PydanticBaseSettingsSource,
        env_settings: ps.PydanticBaseSettingsSource,
        dotenv_settings: ps.PydanticBaseSettingsSource,
        file_secret_settings: ps.PydanticBaseSettingsSource,
    ) -> t.Tuple[ps.PydanticBaseSettingsSource, ...]:
        """Puts one YAML source per known config file between the explicit arguments and the environment."""
        files = [_SectionYamlSource(settings_cls, Path(p), cls.__yml_section__) for p in KNOWN_CONFIG_FILES]
        return (init_settings, *files, env_settings, dotenv_settings, file_secret_settings)


class SolverSettings(YamlSettings):
    """
    Knobs of the branch-and-reduce solver.

    Read from the ``solver`` section of the known YAML files and from ``DIM_*`` environment variables,
    e.g. ``DIM_DEBUG_ASSERT=1`` turns on the runtime structure and elimination-bound checks.
    """

    __yml_section__: t.ClassVar[str] = "solver"
    model_config = ps.SettingsConfigDict(env_prefix="DIM_")

    mode: SolveMode = Field(default="decide", description="decide, min (minimum weight) or max (maximum weight)")
    threads: int = Field(default=1, ge=1, description="Worker processes for independent top-level components")
    debug_assert: bool = Field(default=False, description="Check reduced-instance structure and elimination bounds")
    exact_weights: bool = Field(default=True, description="Keep weights as exact rationals instead of floats")
    base_case_size: int = Field(
        default=BASE_CASE_MAX_UNDECIDED, ge=0, description="Enumerate directly at or below this many U-vertices"
    )
    brute_force_limit: int = Field(
        default=BRUTE_FORCE_MAX_VERTICES, ge=1, le=30, description="Largest graph accepted by the oracle"
    )
