"""
日志配置

text 格式使用 rich 的 RichHandler，json 格式每条记录输出一行 JSON。
日志只写 stderr，stdout 保留给报告文档。
"""

import json
import logging
import sys
from datetime import datetime, timezone

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "liouville-fock"


class JsonFormatter(logging.Formatter):
    """单行 JSON 日志格式"""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "time": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False)


def setup_logging(level: str = "WARNING", fmt: str = "text") -> logging.Logger:
    """
    为包的根 logger 安装处理器（重复调用会替换旧处理器）

    Args:
        level: 日志级别名
        fmt: "text" 或 "json"

    Returns:
        包的根 logger
    """
    root = logging.getLogger("src")
    for handler in list(root.handlers):
        if handler.get_name() == _HANDLER_NAME:
            root.removeHandler(handler)

    if fmt == "json":
        handler: logging.Handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(JsonFormatter())
    else:
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
    handler.set_name(_HANDLER_NAME)
    root.addHandler(handler)
    root.setLevel(level.upper())
    root.propagate = False
    return root
