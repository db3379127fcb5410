#include <pybind11/pybind11.h>
PYBIND11_MODULE(_hfsk, m) { m.doc() = "placeholder"; }
