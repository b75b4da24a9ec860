import glob
import importlib
import logging
import traceback
from pathlib import Path
from types import ModuleType
from typing import Any, Callable, Dict, List, Optional, Sequence, Type

from .base import (
    APP_NAME,
    CAP_CYCLES,
    CAP_GROUND,
    CAP_MINORS,
    DEFAULT_SEED,
    SCHEMA_ID,
    ExitCode,
    GraphKind,
    GraphTooLarge,
    HypothesisFailed,
    LawrenceError,
    Method,
    NotTotallyUnimodular,
    OddCircuitPresent,
    TermOrder,
    TutteMethod,
    UnknownModel,
)
from .exactlin import Circuit, RatMatrix, circuits, is_totally_unimodular, rank
from .graphs import (
    AnyGraph,
    DiGraph,
    Graph,
    SignedGraph,
    GraphReport,
    circuit_taxonomy,
    edge_order,
    graph_degree_mldeg,
    is_balanced,
    is_bipartite,
    spanning_trees_zero_activity,
)
from .matroid import Matroid, TuttePoly, basis_count, tutte_activity, tutte_census, tutte_dc
from .model import ModelValues
from .template import ModelTemplate
from .toric import (
    MLSystem,
    OracleResult,
    build_ml_system,
    degree,
    degree_oracle_lawrence,
    emit_system,
    lawrence_lift,
    mldeg,
    odd_circuit,
    random_data,
)
from .utility import load_json, save_json


logger: logging.Logger = logging.getLogger("lawrence_toric")


class AnalysisEngine:
    """Command back end: every command returns a report dict"""

    setting_filename: str = "lawrence_toric_setting.json"

    def __init__(self) -> None:
        """"""
        self.setting: Dict[str, int] = {
            "cap_minors": CAP_MINORS,
            "cap_ground": CAP_GROUND,
            "cap_cycles": CAP_CYCLES,
            "seed": DEFAULT_SEED,
        }

        self.classes: Dict[str, Type[ModelTemplate]] = {}

    def init_engine(self) -> None:
        """Initializing the engine"""
        self.load_model_class()
        self.load_setting()
        self.write_log("Lawrence toric engine initialized successfully")

    def load_setting(self) -> None:
        """Merge the setting file over the defaults"""
        self.update_setting(load_json(self.setting_filename))

    def save_setting(self) -> None:
        """"""
        save_json(self.setting_filename, self.setting)

    def update_setting(self, setting: dict) -> None:
        """Override known keys; None leaves a value alone"""
        for name in self.setting:
            value: Optional[Any] = setting.get(name, None)
            if value is not None:
                self.setting[name] = int(value)

    def load_model_class(self) -> None:
        """Load model classes"""
        path1: Path = Path(__file__).parent.joinpath("models")
        self.load_model_class_from_folder(path1, "lawrence_toric.models")

        path2: Path = Path.cwd().joinpath("models")
        self.load_model_class_from_folder(path2, "models")

    def load_model_class_from_folder(self, path: Path, module_name: str = "") -> None:
        """Load model classes from a folder"""
        for suffix in ["py", "pyd", "so"]:
            pathname: str = str(path.joinpath(f"*.{suffix}"))
            for filepath in glob.glob(pathname):
                stem: str = Path(filepath).stem
                if stem.startswith("__"):
                    continue
                self.load_model_class_from_module(f"{module_name}.{stem}")

    def load_model_class_from_module(self, module_name: str) -> None:
        """Load model classes from a module file"""
        try:
            module: ModuleType = importlib.import_module(module_name)

            for name in dir(module):
                value = getattr(module, name)
                if (
                    isinstance(value, type)
                    and issubclass(value, ModelTemplate)
                    and value is not ModelTemplate
                    and value.model_name
                ):
                    self.classes[value.model_name] = value
        except:  # noqa
            msg: str = f"Model file {module_name} failed to load, triggering an exception:\n{traceback.format_exc()}"
            self.write_log(msg)

    def get_all_model_names(self) -> List[str]:
        """"""
        return sorted(self.classes.keys())

    def get_model_class_parameters(self, model_name: str) -> dict:
        """"""
        return self.get_model_class(model_name).get_class_parameters()

    def get_model_class(self, model_name: str) -> Type[ModelTemplate]:
        """"""
        model_class: Optional[Type[ModelTemplate]] = self.classes.get(model_name, None)
        if not model_class:
            raise UnknownModel(
                f"model {model_name} not found, available: {', '.join(self.get_all_model_names())}"
            )
        return model_class

    def new_report(self, command: str) -> dict:
        """"""
        return {
            "schema": SCHEMA_ID,
            "command": command,
            "exit_code": ExitCode.OK.value,
            "reason": None,
        }

    def refuse(self, report: dict, error: LawrenceError) -> dict:
        """Record why a result was withheld"""
        report["exit_code"] = error.exit_code.value
        report["reason"] = error.reason
        report["message"] = str(error)
        self.write_log(f"{report['command']}: {error.reason}: {error}")
        return report

    def call_command(self, command: str, func: Callable, *args: Any, **kwargs: Any) -> dict:
        """Run a command, turning exceptions into an error report"""
        try:
            return func(*args, **kwargs)
        except LawrenceError as e:
            return self.refuse(self.new_report(command), e)
        except Exception:
            msg: str = f"Trigger exception stopped \n{traceback.format_exc()}"
            self.write_log(msg)

            report: dict = self.new_report(command)
            report["exit_code"] = ExitCode.INPUT_ERROR.value
            report["reason"] = "internal-error"
            return report

    def analyze(
        self,
        A: RatMatrix,
        oracle: bool = False,
        order: TermOrder = TermOrder.DEGREVLEX
    ) -> dict:
        """Rank, TU verdict, circuits, degree and ML degree of the lift"""
        cap_minors: int = self.setting["cap_minors"]
        cap_ground: int = self.setting["cap_ground"]

        report: dict = self.new_report("analyze")
        report.update({
            "rows": A.rows,
            "cols": A.cols,
            "rank": rank(A),
            "totally_unimodular": None,
            "circuits": None,
            "degree": None,
            "mldeg": None,
            "oracle": None,
        })
        A.integer_rows()

        tu: bool = is_totally_unimodular(A, cap_minors)
        report["totally_unimodular"] = tu

        if A.cols <= cap_ground:
            circs: List[Circuit] = circuits(A)
            report["circuits"] = {
                "count": len(circs),
                "even": sum(1 for c in circs if c.is_even),
                "odd": sum(1 for c in circs if not c.is_even),
                "sizes": sorted({c.size for c in circs}),
            }

        if not tu:
            return self.refuse(report, NotTotallyUnimodular("matrix is not totally unimodular"))

        report["degree"] = basis_count(Matroid(A))
        self.write_log(f"degree {report['degree']}")

        if oracle:
            result: OracleResult = degree_oracle_lawrence(A, order, cap_minors, cap_ground)
            report["oracle"] = {
                "order": order.value,
                "bijection": result.bijection,
                "search": result.search,
                "agree": result.agree,
            }
            if not result.agree or result.bijection != report["degree"]:
                return self.refuse(
                    report,
                    HypothesisFailed("oracle-agreement", f"oracle counts {result.bijection}, {result.search}")
                )

        offending: Optional[Circuit] = odd_circuit(A)
        if offending:
            report["odd_circuit"] = list(offending.v)
            return self.refuse(
                report,
                OddCircuitPresent(f"odd circuit of size {offending.size}", detail=offending)
            )

        report["mldeg"] = tutte_dc(Matroid(A)).mobius
        return report

    def analyze_graph(self, G: AnyGraph, order_name: Optional[str] = None) -> dict:
        """Degree and ML degree from a graph, with its circuit taxonomy"""
        report: dict = self.new_report("graph")

        underlying: Graph = G if isinstance(G, Graph) else G.underlying()
        if isinstance(G, DiGraph):
            kind: GraphKind = GraphKind.DIRECTED
        elif isinstance(G, SignedGraph):
            kind = GraphKind.SIGNED
        else:
            kind = GraphKind.UNDIRECTED

        report.update({
            "kind": kind.value,
            "vertices": underlying.vertex_count,
            "edges": underlying.edge_count,
            "bipartite": bool(is_bipartite(underlying)),
            "degree": None,
            "mldeg": None,
        })
        if isinstance(G, SignedGraph):
            report["balanced"] = is_balanced(G)

        if kind is GraphKind.UNDIRECTED:
            try:
                report["taxonomy"] = [
                    {"edges": [underlying.labels[e] for e in entry.edges], "kind": entry.kind.value}
                    for entry in circuit_taxonomy(underlying, self.setting["cap_cycles"])
                ]
            except GraphTooLarge as e:
                # Degrees do not depend on the cycle list
                report["taxonomy"] = None
                report["taxonomy_skipped"] = str(e)
                self.write_log(f"taxonomy skipped: {e}")

        try:
            result: GraphReport = graph_degree_mldeg(G)
        except HypothesisFailed as e:
            return self.refuse(report, e)

        report["degree"] = result.degree
        report["mldeg"] = result.mldeg
        if result.reason:
            return self.refuse(
                report,
                HypothesisFailed(result.reason, "ML degree needs a bipartite underlying graph")
            )

        if order_name and kind is GraphKind.UNDIRECTED and underlying.edge_count <= self.setting["cap_ground"]:
            order: List[int] = edge_order(underlying, order_name)
            report["order"] = order_name
            report["zero_activity_forests"] = [
                [underlying.labels[e] for e in forest]
                for forest in spanning_trees_zero_activity(underlying, order)
            ]

        return report

    def run_model(self, model_name: str, args: Sequence[str]) -> dict:
        """Build a model, run the pipeline on its base matrix, compare closed forms"""
        model_class: Type[ModelTemplate] = self.get_model_class(model_name)
        setting: dict = model_class.parse_args(list(args))

        model: ModelTemplate = model_class(self, setting)
        model.on_init()

        report: dict = self.new_report("model")
        report.update({
            "model": model_name,
            "parameters": model.get_parameters(),
            "degree": None,
            "mldeg": None,
            "method": None,
            "cross_checked": False,
        })

        closed: Optional[ModelValues] = model.closed_form()
        base: RatMatrix = model.base_matrix()
        report["base_shape"] = [base.rows, base.cols]

        if base.cols > self.setting["cap_ground"]:
            if closed is None:
                return self.refuse(
                    report,
                    HypothesisFailed("pipeline-cap", f"base matrix has {base.cols} columns and no closed form")
                )
            self.write_log(f"{base.cols} columns, closed form only", model)
            report.update({"degree": closed.degree, "mldeg": closed.mldeg, "method": Method.CLOSED_FORM.value})
            return report

        orders = model.lift_orders()
        if orders is not None:
            lifted: RatMatrix = model.model_matrix().permute(*orders)
            report["lift_verified"] = lifted == lawrence_lift(base)

        report["method"] = Method.PIPELINE.value
        report["degree"] = degree(base, self.setting["cap_minors"])
        try:
            report["mldeg"] = mldeg(base, self.setting["cap_minors"])
        except OddCircuitPresent as e:
            if closed is not None:
                report["mldeg"] = closed.mldeg
            return self.refuse(report, e)

        if closed is not None:
            if (closed.degree, closed.mldeg) != (report["degree"], report["mldeg"]):
                return self.refuse(
                    report,
                    HypothesisFailed(
                        "closed-form-agreement",
                        f"closed form {closed.degree}, {closed.mldeg} against pipeline"
                    )
                )
            report["cross_checked"] = True

        report["variables"] = model.get_variables()
        return report

    def tutte(
        self,
        matrix: RatMatrix,
        method: TutteMethod = TutteMethod.DC,
        order: Optional[List[int]] = None
    ) -> dict:
        """Tutte polynomial of the column matroid"""
        M: Matroid = Matroid(matrix, self.setting["cap_ground"])

        if method is TutteMethod.CENSUS:
            T: TuttePoly = tutte_census(M)
        elif method is TutteMethod.ACTIVITY:
            T = tutte_activity(M, order)
        else:
            T = tutte_dc(M)

        report: dict = self.new_report("tutte")
        report.update(T.to_json())
        report.update({
            "method": method.value,
            "text": repr(T),
            "bases": T.bases_count,
            "mobius": T.mobius,
        })
        return report

    def list_circuits(self, matrix: RatMatrix, labels: Optional[Sequence[str]] = None) -> dict:
        """Every circuit with its support and parity"""
        Matroid(matrix, self.setting["cap_ground"]).check_cap()
        names: Sequence[str] = labels or [str(j + 1) for j in range(matrix.cols)]

        report: dict = self.new_report("circuits")
        report["circuits"] = [
            {
                "v": list(c.v),
                "support": [names[j] for j in c.support],
                "parity": c.parity.value,
            }
            for c in circuits(matrix)
        ]
        report["count"] = len(report["circuits"])
        return report

    def emit(
        self,
        matrix: RatMatrix,
        u: Optional[Sequence] = None,
        w: Optional[Sequence] = None,
        eliminated: bool = False,
        seed: Optional[int] = None
    ) -> str:
        """Likelihood system text; missing data is drawn from the seed"""
        if u is None or w is None:
            seed = self.setting["seed"] if seed is None else seed
            random_u, random_w = random_data(matrix.cols, seed)
            u = random_u if u is None else u
            w = random_w if w is None else w
        else:
            seed = None

        system: MLSystem = build_ml_system(matrix, u, w, eliminated, seed)
        self.write_log(f"emitting {len(system.polynomials)} polynomials, form {system.form.value}")
        return emit_system(system)

    def write_log(self, msg: str, model: Optional[ModelTemplate] = None) -> None:
        """Output log"""
        if model:
            msg = f"{model.model_name}: {msg}"
        logger.info(f"{APP_NAME}: {msg}")
