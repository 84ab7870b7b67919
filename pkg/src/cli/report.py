"""
报告文档

每次调用输出一个 JSON 文档：命令回显、输入哈希、版本、耗时以及命令各自的结果段。
除 wall_time_s 外，相同输入与版本得到的报告逐字节一致。
"""

import hashlib
import json
import time
from pathlib import Path
from typing import Any, Dict, Optional

from .. import __version__


def canonical_json(data: Any) -> str:
    """键排序、无多余空白的规范 JSON"""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def input_digest(data: Any) -> str:
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


class Report:
    """单次命令的报告"""

    def __init__(
        self,
        command: str,
        arguments: Dict[str, Any],
        input_data: Optional[Any] = None,
    ):
        self.command = command
        self.arguments = arguments
        digest_source = input_data if input_data is not None else arguments
        self.input_sha256 = input_digest(digest_source)
        self.sections: Dict[str, Any] = {}
        self.passed = True
        self._started = time.perf_counter()

    def add(self, name: str, payload: Any) -> None:
        self.sections[name] = payload

    def fail(self) -> None:
        self.passed = False

    def to_dict(self) -> Dict[str, Any]:
        document: Dict[str, Any] = {
            "command": self.command,
            "arguments": self.arguments,
            "version": __version__,
            "input_sha256": self.input_sha256,
            "passed": self.passed,
        }
        document.update(self.sections)
        document["wall_time_s"] = round(time.perf_counter() - self._started, 6)
        return document

    def render(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def write(self, out: Optional[Path] = None) -> Optional[Path]:
        """写入 out；out 为 None 时返回 None，由调用方输出到 stdout"""
        if out is None:
            return None
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(self.render() + "\n", encoding="utf-8")
        return out


def write_json(path: Path, data: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, ensure_ascii=False) + "\n", encoding="utf-8")
