# base_agent.py
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List


class BaseAgent(ABC):
    """
    The foundation for all computation agents.
    Handles action checks and the success/error envelopes.
    """

    def __init__(self, agent_id: str, capabilities: List[str]):
        self.agent_id = agent_id
        self.capabilities = capabilities  # ['variance_pair', 'region_contains', ...]
        self.log = logging.getLogger(f"agents.{agent_id}")

    @abstractmethod
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        """All agents must implement this message router."""
        pass

    # -------------------------------------------------------------------------
    # CAPABILITIES
    # -------------------------------------------------------------------------
    def check_capability(self, action: str) -> bool:
        return action in self.capabilities

    # -------------------------------------------------------------------------
    # ENVELOPES
    # -------------------------------------------------------------------------
    def success(self, **payload: Any) -> Dict[str, Any]:
        return {"status": "success", **payload}

    def unknown_action(self, action: str) -> Dict[str, Any]:
        self.log.warning("Unknown action %r", action)
        return {
            "status": "error",
            "error": "UnknownAction",
            "message": f"Unknown action: {action}",
        }
