#include <pybind11/pybind11.h>
PYBIND11_MODULE(_provd, m) { m.doc() = "placeholder"; }
