import logging
from datetime import datetime
from typing import Dict, List, Optional, Tuple

from pandas import DataFrame

from .base import CAP_GROUND
from .matroid import Matroid, TuttePoly, tutte_dc
from .model import (
    closed_degree_K,
    closed_mldeg_K,
    closed_mldeg_K_stirling,
    complete_bipartite_incidence,
    ROW_FORMULAS,
    row_mldeg_K,
)


logger: logging.Logger = logging.getLogger("lawrence_toric")


def evaluate_closed(m1: int, m2: int) -> dict:
    """One table cell from the closed formulas"""
    return {
        "m1": m1,
        "m2": m2,
        "degree": closed_degree_K(m1, m2),
        "mldeg": closed_mldeg_K(m1, m2),
    }


def evaluate_pipeline(m1: int, m2: int) -> dict:
    """One table cell from deletion-contraction on A_K(m1,m2)"""
    T: TuttePoly = tutte_dc(Matroid(complete_bipartite_incidence(m1, m2)))
    return {
        "m1": m1,
        "m2": m2,
        "degree": T.bases_count,
        "mldeg": T.mobius,
    }


class TableEngine:
    """Degree and ML degree tables of the lifted complete bipartite graphs"""

    def __init__(self) -> None:
        """Constructor"""
        self.max_m: int = 6
        self.check_up_to: int = 0
        self.cap_ground: int = CAP_GROUND

        self.results: Dict[Tuple[int, int], dict] = {}
        self.checks: Dict[Tuple[int, int], dict] = {}
        self.result_df: Optional[DataFrame] = None

        self.logs: List[str] = []

    def set_parameters(self, max_m: int = 6, check_up_to: int = 0, cap_ground: int = CAP_GROUND) -> None:
        """Setting parameters"""
        self.max_m = max_m
        self.check_up_to = check_up_to
        self.cap_ground = cap_ground

    def run_tables(self) -> None:
        """Fill every cell from the closed formulas, then cross-check small cells"""
        self.output(f"Start computing tables up to {self.max_m}")

        cells: List[Tuple[int, int]] = [
            (m1, m2) for m1 in range(1, self.max_m + 1) for m2 in range(1, self.max_m + 1)
        ]
        for m1, m2 in cells:
            self.results[(m1, m2)] = evaluate_closed(m1, m2)

        for m1, m2 in cells:
            if max(m1, m2) > self.check_up_to or m1 * m2 > self.cap_ground:
                continue
            self.checks[(m1, m2)] = evaluate_pipeline(m1, m2)
            self.output(f"Pipeline checked K({m1},{m2})")

        self.output("Table computation completed")

    def calculate_result(self) -> DataFrame:
        """Long-form frame indexed by (m1, m2)"""
        rows: Dict[str, list] = {"m1": [], "m2": [], "degree": [], "mldeg": [], "checked": []}
        for key, cell in sorted(self.results.items()):
            for name in ("m1", "m2", "degree", "mldeg"):
                rows[name].append(cell[name])

            check: Optional[dict] = self.checks.get(key, None)
            rows["checked"].append(
                None if check is None
                else (check["degree"], check["mldeg"]) == (cell["degree"], cell["mldeg"])
            )

        self.result_df = DataFrame.from_dict(rows).set_index(["m1", "m2"])
        return self.result_df

    def degree_table(self) -> DataFrame:
        """"""
        return self._pivot("degree")

    def mldeg_table(self) -> DataFrame:
        """"""
        return self._pivot("mldeg")

    def _pivot(self, value: str) -> DataFrame:
        """"""
        if self.result_df is None:
            self.calculate_result()
        return self.result_df[value].unstack("m2")

    def calculate_statistics(self, output: bool = True) -> dict:
        """Agreement of the independent formulas"""
        if self.result_df is None:
            self.calculate_result()

        stirling_agree: bool = all(
            closed_mldeg_K_stirling(m1, m2) == cell["mldeg"]
            for (m1, m2), cell in self.results.items()
        )
        row_agree: bool = all(
            row_mldeg_K(m1, m2) == cell["mldeg"]
            for (m1, m2), cell in self.results.items()
            if m2 in ROW_FORMULAS
        )
        checked = self.result_df["checked"].dropna()
        pipeline_agree: bool = bool(checked.all()) if len(checked) else True

        statistics: dict = {
            "cells": len(self.results),
            "pipeline_checked": int(len(checked)),
            "pipeline_agree": pipeline_agree,
            "stirling_agree": stirling_agree,
            "row_formulas_agree": row_agree,
        }

        if output:
            self.output("-" * 30)
            self.output(f"Cells:\t{statistics['cells']}")
            self.output(f"Pipeline checked:\t{statistics['pipeline_checked']}")
            self.output(f"Pipeline agree:\t{pipeline_agree}")
            self.output(f"Stirling agree:\t{stirling_agree}")
            self.output(f"Row formulas agree:\t{row_agree}")

        return statistics

    def format_tables(self) -> str:
        """Both tables as aligned text"""
        lines: List[str] = []
        for title, df in (("Degree", self.degree_table()), ("ML degree", self.mldeg_table())):
            width: int = max(len(str(v)) for v in df.to_numpy().ravel())
            width = max(width, len(str(self.max_m)))

            lines.append(f"{title} of the Lawrence lift of A_K(m1,m2)")
            lines.append(" " * 6 + " ".join(f"{m2:>{width}}" for m2 in df.columns))
            for m1, row in df.iterrows():
                lines.append(f"m1={m1:<3}" + " ".join(f"{int(v):>{width}}" for v in row))
            lines.append("")

        return "\n".join(lines)

    def to_report(self) -> dict:
        """"""
        return {
            "max": self.max_m,
            "degree_table": [[int(v) for v in row] for row in self.degree_table().to_numpy()],
            "mldeg_table": [[int(v) for v in row] for row in self.mldeg_table().to_numpy()],
            "statistics": self.calculate_statistics(output=False),
        }

    def output(self, msg: str) -> None:
        """Output table engine information"""
        msg = f"{datetime.now()}\t{msg}"
        self.logs.append(msg)
        logger.info(msg)
