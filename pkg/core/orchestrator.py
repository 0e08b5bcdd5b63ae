"""
Orchestrator: central coordinator that wires agents together and dispatches messages.

Responsibilities:
- Hold references to agents (agent_id -> agent_object)
- Deliver a message to its target agent synchronously and return the response
- Turn domain errors raised inside an agent into error envelopes
- Queue requests with submit() and answer them in order with drain()

Every computation is a pure function of its message, so delivery is
synchronous and single-threaded.
"""

import logging
import time
from typing import Any, Dict, List, Optional

from core.errors import QuantumError
from core.event_queue import EventQueue

log = logging.getLogger(__name__)


def make_message(to: str, action: str, data: Optional[Dict[str, Any]] = None, sender: str = "cli") -> Dict[str, Any]:
    return {
        "from": sender,
        "to": to,
        "action": action,
        "data": data or {},
        "timestamp": time.time(),
    }


def error_envelope(error: str, message: str) -> Dict[str, Any]:
    return {"status": "error", "error": error, "message": message}


class Orchestrator:
    def __init__(self):
        self.queue = EventQueue()
        self.agents: Dict[str, object] = {}  # agent_id -> agent instance

    # --------------------------
    # Agent management
    # --------------------------
    def register_agent(self, agent_id: str, agent_obj) -> None:
        self.agents[agent_id] = agent_obj
        log.debug("Registered agent: %s", agent_id)

    # --------------------------
    # Message dispatching
    # --------------------------
    def dispatch_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        """
        Deliver message to the intended recipient and return its response.
        Domain errors become {"status": "error", "error": <class name>, "message": ...};
        anything else is logged with its traceback and reported as InternalError.
        """
        target = message.get("to")
        if not target:
            return error_envelope("MissingRecipient", "Message missing 'to' field")

        agent = self.agents.get(target)
        if not agent:
            log.warning("No agent registered under id '%s'. Dropping message.", target)
            return error_envelope("UnknownAgent", f"No agent '{target}'")

        log.debug("Dispatching %s from %s -> %s", message.get("action"), message.get("from"), target)
        try:
            return agent.process_message(message)
        except QuantumError as exc:
            log.warning("%s rejected %s: %s: %s", target, message.get("action"), type(exc).__name__, exc)
            return error_envelope(type(exc).__name__, str(exc))
        except (KeyError, TypeError, ValueError) as exc:
            log.warning("%s got a malformed %s request: %r", target, message.get("action"), exc)
            return error_envelope("BadRequest", f"{type(exc).__name__}: {exc}")
        except Exception as exc:
            log.exception("Exception while processing message for %s", target)
            return error_envelope("InternalError", str(exc))

    def send(self, to: str, action: str, data: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        return self.dispatch_message(make_message(to, action, data))

    # --------------------------
    # Queued requests
    # --------------------------
    def submit(self, to: str, action: str, data: Optional[Dict[str, Any]] = None) -> None:
        self.queue.push(make_message(to, action, data))

    def drain(self) -> List[Dict[str, Any]]:
        """Dispatch every queued message in FIFO order; responses come back in the same order."""
        responses = []
        while True:
            msg = self.queue.pop()
            if msg is None:
                return responses
            responses.append(self.dispatch_message(msg))
