import logging
import threading
from typing import Callable, Dict, Hashable

logger = logging.getLogger(__name__)


class KeyedMemo:
    """
    Thread-safe memo table.

    Readers never block on finished keys. For a missing key exactly one caller
    computes the value, concurrent callers for the same key wait for it and
    reuse the result. The computation runs outside the table lock so nested
    lookups of other keys are allowed.
    """

    def __init__(self, name: str = "memo"):
        self.name = name
        self._lock = threading.Lock()
        self._values: Dict[Hashable, object] = {}
        self._pending: Dict[Hashable, threading.Event] = {}

    def __contains__(self, key) -> bool:
        return key in self._values

    def __len__(self) -> int:
        return len(self._values)

    def get(self, key, default=None):
        return self._values.get(key, default)

    def keys(self):
        with self._lock:
            return list(self._values)

    def put(self, key, value) -> None:
        with self._lock:
            self._values.setdefault(key, value)

    def get_or_compute(self, key, compute: Callable[[], object]):
        try:
            return self._values[key]
        except KeyError:
            pass

        while True:
            with self._lock:
                if key in self._values:
                    return self._values[key]
                event = self._pending.get(key)
                if event is None:
                    event = self._pending[key] = threading.Event()
                    owner = True
                else:
                    owner = False

            if not owner:
                event.wait()
                # the owner may have failed, in which case we try ourselves
                continue

            try:
                value = compute()
            except BaseException:
                with self._lock:
                    del self._pending[key]
                event.set()
                raise

            with self._lock:
                self._values[key] = value
                del self._pending[key]
            event.set()
            logger.debug("%s: stored %r", self.name, key)
            return value

    def clear(self) -> None:
        with self._lock:
            self._values.clear()
