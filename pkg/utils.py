import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import wraps
from typing import Callable, Iterable, List, TypeVar

import config
from exceptions import EngineError

T = TypeVar("T")
R = TypeVar("R")


def setup_logging(level: int | str = logging.INFO) -> None:
    """Configure root logger for the application."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )


def log_exceptions(func):
    """
    Decorator to log any exception raised by the wrapped function. Engine errors
    (bad input) get a one-line message; anything else keeps its traceback.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except EngineError as e:
            logging.getLogger(func.__module__).error(f"{func.__name__}: {e}")
            raise
        except Exception:
            logging.getLogger(func.__module__).exception("Error in %s", func.__name__)
            raise

    return wrapper


def stable_digest(text: str) -> str:
    """Short sha256 digest of a canonical text rendering."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> List[R]:
    """Order-preserving map, threaded when THREAD_COUNT > 1."""
    items = list(items)
    threads = config.THREAD_COUNT if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
