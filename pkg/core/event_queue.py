"""
Simple in-memory event queue for request messages.

Messages are plain dictionaries with fields:
  { from, to, action, data, timestamp }
The orchestrator pushes submitted requests here and drains them in FIFO
order, so a batch of requests is answered in the order it was queued.
"""

from collections import deque
from threading import Lock
from typing import Any, Dict, Optional


class EventQueue:
    def __init__(self):
        self._queue = deque()
        self._lock = Lock()

    def push(self, message: Dict[str, Any]) -> None:
        """Push a message into the queue (thread-safe)."""
        with self._lock:
            self._queue.append(message)

    def pop(self) -> Optional[Dict[str, Any]]:
        """Pop next message from queue. Returns None if empty."""
        with self._lock:
            if not self._queue:
                return None
            return self._queue.popleft()

    def __len__(self) -> int:
        with self._lock:
            return len(self._queue)
