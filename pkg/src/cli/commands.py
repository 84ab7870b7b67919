"""
liouville-fock CLI 命令实现

子命令：verify-algebra、basis、ness、spectrum。
stdout 只输出一个 JSON 报告文档，日志与错误信息写 stderr。
退出码：0 成功，1 数值/物理失败，2 输入错误。
"""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

import numpy as np
import typer
from rich.console import Console
from rich.markup import escape

from .. import __version__
from ..core.dual_bases import build_dual_basis, max_safe_index
from ..core.exceptions import (
    ConfigError,
    DegenerateSteadyStateError,
    DimensionMismatchError,
    InvalidModeSystemError,
    InvalidModelError,
    ModeIndexError,
    StatisticsMismatchError,
    ThirdQuantizationError,
    TruncationMarginError,
)
from ..core.fock_space import ModeSystem, Statistics, number_op
from ..core.lindblad import (
    assemble_liouvillean,
    expectation,
    liouvillean_spectrum,
    ness,
    third_quantize,
)
from ..core.supermaps import hermitian_adjoint_gap, map_family, verify_algebra
from ..utils.config import get_settings, load_settings, set_settings
from ..utils.logging import setup_logging
from ..utils.serialization import array_to_json, complex_to_pair
from .report import Report, write_json
from .schema import (
    InputFileError,
    build_observables,
    load_model_file,
    load_observables_file,
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NUMERICAL_FAILURE = 1
EXIT_INPUT_ERROR = 2

_INPUT_ERRORS = (
    InputFileError,
    ConfigError,
    InvalidModeSystemError,
    InvalidModelError,
    TruncationMarginError,
    ModeIndexError,
    StatisticsMismatchError,
    DimensionMismatchError,
)
_NUMERICAL_ERRORS = (ThirdQuantizationError, DegenerateSteadyStateError)

# 创建应用实例
app = typer.Typer(
    name="liouville-fock",
    help="开放量子系统的算符空间 Fock 表示与二次 Lindblad 稳态",
    add_completion=False,
    rich_markup_mode="rich",
)

# 错误与提示只写 stderr
err_console = Console(stderr=True)



_STATISTICS_HELP = "粒子统计：fermionic 或 bosonic"
_OUT_HELP = "报告输出路径，默认 stdout"


def _abort(message: str, code: int) -> None:
    err_console.print(
        f"[bold red]错误:[/bold red] {escape(message)}",
        markup=True,
        highlight=False,
        soft_wrap=True,
    )
    raise typer.Exit(code)


@contextmanager
def _exit_on_error() -> Iterator[None]:
    """把库异常映射为退出码"""
    try:
        yield
    except _INPUT_ERRORS as e:
        _abort(str(e), EXIT_INPUT_ERROR)
    except _NUMERICAL_ERRORS as e:
        _abort(str(e), EXIT_NUMERICAL_FAILURE)


def _emit(report: Report, out: Optional[Path]) -> None:
    written = report.write(out)
    if written is None:
        typer.echo(report.render())
    else:
        err_console.print(f"报告已写入 {written}", highlight=False)


def _finish(report: Report) -> None:
    if not report.passed:
        raise typer.Exit(EXIT_NUMERICAL_FAILURE)


def _tolerance(value: Optional[float]) -> float:
    """命令行给出的容差优先，否则取配置 numerics.tolerance"""
    return value if value is not None else get_settings().numerics.tolerance


def _mode_system(statistics: Statistics, n: int, cutoff: int) -> ModeSystem:
    if statistics == Statistics.FERMIONIC:
        return ModeSystem.fermionic(n)
    return ModeSystem.bosonic(n, cutoff)


def _system_dict(sys: ModeSystem) -> Dict[str, Any]:
    return {
        "statistics": sys.statistics.value,
        "n_modes": sys.n_modes,
        "cutoff": sys.cutoff,
    }


def version_callback(value: bool) -> None:
    """版本信息回调函数"""
    if value:
        typer.echo(f"liouville-fock v{__version__}")
        raise typer.Exit(EXIT_OK)


@app.callback()
def main(
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        "-v",
        help="显示版本信息",
        callback=version_callback,
        is_eager=True,
    ),
    config: Optional[Path] = typer.Option(
        None,
        "--config",
        "-c",
        help="配置文件路径（默认读取当前目录的 .liouville-fock.yaml）",
    ),
    log_level: Optional[str] = typer.Option(
        None,
        "--log-level",
        help="日志级别：DEBUG, INFO, WARNING, ERROR",
    ),
    log_format: Optional[str] = typer.Option(
        None,
        "--log-format",
        help="日志格式：text 或 json",
    ),
) -> None:
    """
    liouville-fock - 算符空间 Fock 表示工具

    校验正则伴随映射的代数关系，导出对偶 Fock 基，求二次 Lindblad 模型的谱与非平衡稳态。
    """
    with _exit_on_error():
        settings = load_settings(str(config) if config else None)
    set_settings(settings)
    level = (log_level or settings.logging.level).upper()
    fmt = (log_format or settings.logging.format).lower()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        _abort(f"未知的日志级别 {level}", EXIT_INPUT_ERROR)
    if fmt not in ("text", "json"):
        _abort(f"未知的日志格式 {fmt}，可选 text 或 json", EXIT_INPUT_ERROR)
    setup_logging(level, fmt)


@app.command("verify-algebra")
def verify_algebra_command(
    statistics: Statistics = typer.Option(
        ..., "--statistics", "-s", help=_STATISTICS_HELP
    ),
    n: int = typer.Option(..., "--n", "-n", help="模式数"),
    cutoff: int = typer.Option(4, "--cutoff", help="玻色占据数截断（费米系统忽略）"),
    tolerance: Optional[float] = typer.Option(
        None, "--tolerance", "-t", help="残差容差，默认取配置"
    ),
    max_index: Optional[int] = typer.Option(
        None, "--max-index", help="Gram 校验所用对偶基的分量上界"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help=_OUT_HELP),
) -> None:
    """
    校验几乎-CCR / 几乎-CAR、真空条件与对偶基的 Gram 矩阵
    """
    tol = _tolerance(tolerance)
    with _exit_on_error():
        sys = _mode_system(statistics, n, cutoff)
        fam = map_family(sys)
        bound = max_index
        if bound is None:
            bound = min(max_safe_index(sys), get_settings().basis.default_max_index)
        basis = build_dual_basis(fam, max_index=bound)
        algebra = verify_algebra(fam)

    report = Report(
        "verify-algebra",
        {**_system_dict(sys), "tolerance": tol, "max_index": bound},
    )
    report.add("algebra", algebra.to_dict())
    report.add(
        "gram",
        {
            "max_index": bound,
            "size": basis.size,
            "deviation": basis.gram_deviation(),
            "smallest_singular_value": basis.smallest_singular_value(),
        },
    )
    report.add("hermitian_adjoint_gap", hermitian_adjoint_gap(fam).tolist())

    if not algebra.passed(tol):
        logger.warning(
            f"代数关系残差 {algebra.max_residual():.3e} 超出容差 {tol:.1e}"
        )
        report.fail()
    if basis.gram_deviation() > tol:
        logger.warning(
            f"Gram 矩阵偏差 {basis.gram_deviation():.3e} 超出容差 {tol:.1e}"
        )
        report.fail()
    _emit(report, out)
    _finish(report)


@app.command("basis")
def basis_command(
    statistics: Statistics = typer.Option(
        ..., "--statistics", "-s", help=_STATISTICS_HELP
    ),
    n: int = typer.Option(..., "--n", "-n", help="模式数"),
    cutoff: int = typer.Option(4, "--cutoff", help="玻色占据数截断（费米系统忽略）"),
    max_index: Optional[int] = typer.Option(
        None, "--max-index", help="多重指标每个分量的上界"
    ),
    tolerance: Optional[float] = typer.Option(
        None, "--tolerance", "-t", help="Gram 偏差容差，默认取配置"
    ),
    out: Optional[Path] = typer.Option(
        None,
        "--out",
        "-o",
        help="输出目录：写入 kets.json、bras.json、gram.json、indices.json",
    ),
) -> None:
    """
    构造并导出双正交对偶 Fock 基
    """
    tol = _tolerance(tolerance)
    with _exit_on_error():
        sys = _mode_system(statistics, n, cutoff)
        basis = build_dual_basis(map_family(sys), max_index=max_index)

    bound = 1 if sys.is_fermionic else max_index
    if bound is None:
        bound = get_settings().basis.default_max_index
    report = Report(
        "basis", {**_system_dict(sys), "max_index": bound, "tolerance": tol}
    )
    deviation = basis.gram_deviation()
    report.add(
        "basis",
        {
            "size": basis.size,
            "order": [list(idx) for idx in basis.order],
            "indices": [m.label() for m in basis.indices],
            "gram_deviation": deviation,
            "smallest_singular_value": basis.smallest_singular_value(),
        },
    )

    if out is not None:
        payload = basis.to_dict()
        files = {
            "kets.json": payload["kets"],
            "bras.json": payload["bras"],
            "gram.json": payload["gram"],
            "indices.json": {
                "order": payload["order"],
                "indices": payload["indices"],
            },
        }
        for name, data in files.items():
            write_json(out / name, data)
        report.add("files", sorted(str(out / name) for name in files))

    if deviation > tol:
        logger.warning(f"Gram 矩阵偏差 {deviation:.3e} 超出容差 {tol:.1e}")
        report.fail()
    typer.echo(report.render())
    _finish(report)


@app.command("ness")
def ness_command(
    model_path: Path = typer.Argument(..., help="模型 JSON 文件"),
    observables: Optional[Path] = typer.Option(
        None, "--observables", help="可观测量 JSON 文件"
    ),
    tolerance: Optional[float] = typer.Option(
        None, "--tolerance", "-t", help="稳态残差 ‖L̂ vec(ρ)‖ 的容差，默认取配置"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help=_OUT_HELP),
) -> None:
    """
    求非平衡稳态、谱隙与可观测量期望值
    """
    tol = _tolerance(tolerance)
    with _exit_on_error():
        spec, raw = load_model_file(model_path)
        model = spec.to_model()
        observable_specs: Dict[str, Any] = {}
        observable_raw: Any = None
        if observables is not None:
            observable_specs, observable_raw = load_observables_file(observables)
        operators = build_observables(model.sys, observable_specs)
        generator = assemble_liouvillean(model)
        result = ness(model, liouvillean=generator)
        form = third_quantize(model, liouvillean=generator)

    report = Report(
        "ness",
        {
            "model": str(model_path),
            "observables": str(observables) if observables else None,
            "tolerance": tol,
        },
        input_data={"model": raw, "observables": observable_raw},
    )
    report.add("model", raw)
    report.add("ness", result.to_dict())
    report.add("third_quantized", form.to_dict())

    if result.degenerate:
        report.fail()
        _emit(report, out)
        _abort(
            f"稳态不唯一：零空间维数 null_dim={result.null_dim}，全部零空间基底已写入报告",
            EXIT_NUMERICAL_FAILURE,
        )

    occupations = [
        complex_to_pair(expectation(number_op(model.sys, j), result))
        for j in range(1, model.sys.n_modes + 1)
    ]
    report.add("occupations", occupations)
    report.add(
        "expectations",
        {
            name: complex_to_pair(expectation(op, result))
            for name, op in operators.items()
        },
    )
    if result.residual > tol:
        logger.warning(f"稳态残差 {result.residual:.3e} 超出容差 {tol:.1e}")
        report.fail()
    _emit(report, out)
    _finish(report)


@app.command("spectrum")
def spectrum_command(
    model_path: Path = typer.Argument(..., help="模型 JSON 文件"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help=_OUT_HELP),
) -> None:
    """
    输出 Liouvillean 的全部本征值（按实部降序）
    """
    with _exit_on_error():
        spec, raw = load_model_file(model_path)
        model = spec.to_model()
        eigenvalues = liouvillean_spectrum(assemble_liouvillean(model))

    eig_tol = get_settings().numerics.eig_tolerance
    max_real = float(np.max(eigenvalues.real))
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    report = Report("spectrum", {"model": str(model_path)}, input_data=raw)
    report.add("model", raw)
    report.add(
        "spectrum",
        {
            "count": int(eigenvalues.size),
            "eigenvalues": array_to_json(eigenvalues),
            "max_real_part": max_real,
            "zero_modes": int(np.sum(np.abs(eigenvalues) <= eig_tol * scale)),
        },
    )
    if max_real > 1e-9:
        logger.warning(f"谱中出现正实部 {max_real:.3e}")
        report.fail()
    _emit(report, out)
    _finish(report)
