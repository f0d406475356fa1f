import math
from typing import Dict

"""
Names, orders and stage counts of the built-in methods
"""
builtin: Dict = {
    "names": [
        "SSSEI1s2",
        "SSSEI2s4",
        "SSSEI3s4",
        "SSRK1s2",
        "SSRK2s4",
        "SSRK3s4",
    ],
    "sei": ["SSSEI1s2", "SSSEI2s4", "SSSEI3s4"],
    "rk": ["SSRK1s2", "SSRK2s4", "SSRK3s4"],
    "orders": {
        "SSSEI1s2": 2,
        "SSSEI2s4": 4,
        "SSSEI3s4": 4,
        "SSRK1s2": 2,
        "SSRK2s4": 4,
        "SSRK3s4": 4,
    },
    "stages": {
        "SSSEI1s2": 1,
        "SSSEI2s4": 2,
        "SSSEI3s4": 3,
        "SSRK1s2": 1,
        "SSRK2s4": 2,
        "SSRK3s4": 3,
    },
}

"""
Benchmark setups
"""
duffing: Dict = {
    "k": 0.07,
    "omega": 20.0,
    "t_end": 20.0,
    "h_list": [1 / 8, 1 / 16, 1 / 32, 1 / 64],
    "y0": [0.0, 20.0],
}

wind: Dict = {
    "r": 20.0,
    "theta": math.pi / 2.0,
    "theta_damped": math.pi / 2.0 - 1e-4,
    "t_end": 10.0,
    "h_list": [1 / 8, 1 / 16, 1 / 32, 1 / 64],
    "y0": [0.0, 1.0],
}

"""
Golden tableau files shipped with the package
"""
data_dir: str = "pysei/data"
tableau_files: Dict = {
    "midpoint": "pysei/data/midpoint.json",
    "gauss2": "pysei/data/gauss2.json",
    "composition3": "pysei/data/composition3.json",
}
