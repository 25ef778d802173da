"""
General utilities.
"""
import os
import logging
import inspect
import configparser
import pandas as pd
from enum import StrEnum
from functools import reduce
from pathlib import Path
from pydantic import BaseModel
from typing import Iterable, List, Sequence
from dotenv import load_dotenv

load_dotenv()

### ENUMS ###


class Ambient(StrEnum):
    """
    Which u-infinity DG-operad the chain-level engine works in.
    """

    # Ass-based: no strict unit available
    UINF_A = "uinf-a"
    # uAss-based: strict unit u with mu o_j u = id
    UINF_UA = "uinf-ua"


class OutputFormat(StrEnum):
    """
    Output formats of the command line.
    """

    JSON = "json"
    TEXT = "text"
    DOT = "dot"


class Suite(StrEnum):
    """
    Verification suites.
    """

    D2 = "d2"
    DERIVATION = "derivation"
    AXIOMS = "axioms"
    GORDO = "gordo"
    CENSUS = "census"
    GENERATION = "generation"
    PUSHOUT = "pushout"


### GENERAL UTILS ###


def load_config(config_path: str = None) -> configparser.ConfigParser:
    """
    Load a config file from the current dir or a given location.
    """
    config = configparser.ConfigParser()
    if config_path is None:
        config_path = os.path.join(get_current_dir(__file__), "config.ini")
    config.read(config_path)

    return config


def get_current_dir(__file__) -> str:
    """
    Get the path to the directory of the script.
    """
    return os.path.dirname(os.path.realpath(__file__))


def get_fixtures_dir(config: configparser.ConfigParser = None) -> Path:
    """
    Golden fixtures directory; `OPERADIX_FIXTURES` wins over the config.
    """
    override = os.environ.get("OPERADIX_FIXTURES")
    if override:
        return Path(override)

    if config is None:
        config = load_config()
    relative = config["fixtures"]["directory"]
    repo_root = Path(get_current_dir(__file__)).parent.parent

    return repo_root / relative


### SIGN UTILS ###


def sign(exponent: int) -> int:
    """
    (-1)^exponent.
    """
    return -1 if exponent % 2 else 1


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """
    Sign of moving graded factors with the given degrees from positions
    0..k-1 into the sequence `order` (order[t] is the factor that ends up
    at position t). Every transposition of a, b contributes (-1)^(|a||b|).
    """
    assert sorted(order) == list(range(len(degrees)))

    exponent = 0
    for t, later in enumerate(order):
        if degrees[later] % 2 == 0:
            continue
        for earlier in order[:t]:
            if earlier > later:
                exponent += degrees[earlier]

    return sign(exponent)


def product(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b, values, 1)


### REPORT UTILS ###


def pydantic_to_pandas(models: List[BaseModel]) -> pd.DataFrame:
    """
    Turn a list of pydantic models into pandas dataframe.
    """
    df = pd.DataFrame([data.model_dump() for data in models])
    return df


def models_to_text(models: List[BaseModel]) -> str:
    """
    Fixed-width table of a list of report rows.
    """
    if not models:
        return "(empty)"

    df = pydantic_to_pandas(models)
    return df.to_string(index=False)


class Logging:
    """
    Console and file logging for the engine.

    Modules take a logger with `logger = Logging.get_console_logger()`; the
    command line calls `Logging.setup()` once. Levels and the log file come
    from the [logging] section of config.ini, and `OPERADIX_LOG_LEVEL`
    overrides the console level. Console output goes to stderr so that
    reports on stdout stay machine readable.
    """

    FILE_FORMAT = "%(asctime)s %(name)-12s %(levelname)-8s %(message)s"
    CONSOLE_FORMAT = "%(name)-12s %(levelname)-8s %(message)s"
    DATE_FORMAT = "%m-%d %H:%M"

    _settings: dict = {}

    @classmethod
    def setup(cls, log_path: str = None) -> None:
        settings = cls._load_settings()
        if log_path is not None:
            settings["filename"] = log_path

        log_dir = os.path.dirname(settings["filename"])
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

        logging.basicConfig(
            level=settings["file_level"],
            format=cls.FILE_FORMAT,
            datefmt=cls.DATE_FORMAT,
            filename=settings["filename"],
            filemode="a",
        )
        logging.captureWarnings(capture=True)

    @classmethod
    def _load_settings(cls) -> dict:
        if not cls._settings:
            section = load_config()["logging"]
            console = os.environ.get(
                "OPERADIX_LOG_LEVEL", section.get("console_level", "INFO")
            )
            cls._settings = {
                "filename": section.get("filename", "logs/operadix.log"),
                "file_level": section.get("file_level", "DEBUG").upper(),
                "console_level": console.upper(),
            }
        return cls._settings

    @classmethod
    def get_console_logger(cls, log_name: str = None) -> logging.Logger:
        """
        Logger named after the calling module, with one stderr handler.
        """
        if log_name is None:
            frame = inspect.stack()[1]
            module = inspect.getmodule(frame[0])
            log_name = module.__name__ if module else "operadix"

        logger = logging.getLogger(log_name)
        if not logger.handlers:
            handler = logging.StreamHandler()
            handler.setLevel(cls._load_settings()["console_level"])
            handler.setFormatter(logging.Formatter(cls.CONSOLE_FORMAT))
            logger.addHandler(handler)

        return logger
