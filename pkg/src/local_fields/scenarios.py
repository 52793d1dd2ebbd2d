"""
Shipped Field Scenarios

Named base fields and extension towers written in the job-file grammar,
for use as ``scenario: <name>`` in a job file or from tests.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class FieldScenario:
    """A base field and a tower over it, in job-file strings"""
    name: str
    description: str
    field: str
    extension: List[str] = field(default_factory=list)
    degree: int = 1
    precision: Optional[int] = None
    base_change_r: int = 2

    @property
    def is_trivial(self) -> bool:
        return not self.extension


class Scenarios:
    """Collection of shipped scenarios"""

    @staticmethod
    def q2_i() -> FieldScenario:
        """Q_2(i) = Q_2(1+i), wildly ramified quadratic"""
        return FieldScenario(
            name="Q_2(i)/Q_2",
            description="x^2 - 2x + 2, root 1+i; single lower and upper break at 1",
            field="mixed 2 1",
            extension=["eisenstein [2, -2]"],
            degree=2,
        )

    @staticmethod
    def q3_sqrt_m3() -> FieldScenario:
        """Q_3(sqrt(-3)), tamely ramified quadratic"""
        return FieldScenario(
            name="Q_3(sqrt(-3))/Q_3",
            description="x^2 + 3; tame, break at 0",
            field="mixed 3 1",
            extension=["eisenstein [3, 0]"],
            degree=2,
        )

    @staticmethod
    def q2_unramified_quadratic() -> FieldScenario:
        return FieldScenario(
            name="Q_4/Q_2",
            description="Unramified quadratic extension of Q_2",
            field="mixed 2 1",
            extension=["unram 2"],
            degree=2,
        )

    @staticmethod
    def q2_unramified_cubic() -> FieldScenario:
        return FieldScenario(
            name="Q_8/Q_2",
            description="Unramified cubic extension of Q_2",
            field="mixed 2 1",
            extension=["unram 3"],
            degree=3,
        )

    @staticmethod
    def artin_schreier() -> FieldScenario:
        """y^2 + y = 1/t over F_2((t)), via pi = t y"""
        return FieldScenario(
            name="F_2((t))(y)/F_2((t)), y^2 + y = 1/t",
            description="x^2 + t x + t; Artin-Schreier, break at 1",
            field="equal 2",
            extension=["eisenstein [[0, 1], [0, 1]]"],
            degree=2,
        )

    @staticmethod
    def q2_zeta8() -> FieldScenario:
        """Q_2(zeta_8), Galois group Z/2 x Z/2"""
        return FieldScenario(
            name="Q_2(zeta_8)/Q_2",
            description="(x+1)^4 + 1; upper breaks 1 and 2",
            field="mixed 2 1",
            extension=["eisenstein [2, 4, 6, 4]"],
            degree=4,
            precision=10,
        )

    @staticmethod
    def q4_i_tower() -> FieldScenario:
        return FieldScenario(
            name="Q_4(i)/Q_2",
            description="Q_2 -> Q_4 -> Q_4(i); e = f = 2",
            field="mixed 2 1",
            extension=["unram 2", "eisenstein [2, -2]"],
            degree=4,
        )

    @staticmethod
    def trivial() -> FieldScenario:
        return FieldScenario(
            name="Q_2/Q_2",
            description="Trivial extension",
            field="mixed 2 1",
        )

    @staticmethod
    def all_scenarios() -> Dict[str, FieldScenario]:
        """Get all shipped scenarios as a dictionary"""
        return {
            'q2_i': Scenarios.q2_i(),
            'q3_sqrt_m3': Scenarios.q3_sqrt_m3(),
            'q2_unram2': Scenarios.q2_unramified_quadratic(),
            'q2_unram3': Scenarios.q2_unramified_cubic(),
            'f2_artin_schreier': Scenarios.artin_schreier(),
            'q2_zeta8': Scenarios.q2_zeta8(),
            'q4_i': Scenarios.q4_i_tower(),
            'trivial': Scenarios.trivial(),
        }

    @staticmethod
    def get_scenario(name: str) -> FieldScenario:
        """
        Get a scenario by name.

        Raises:
            KeyError: If scenario name not found
        """
        scenarios = Scenarios.all_scenarios()
        if name not in scenarios:
            available = ', '.join(scenarios.keys())
            raise KeyError(f"Scenario '{name}' not found. "
                           f"Available scenarios: {available}")
        return scenarios[name]
