#include "densestream/graph.hpp"

// DynamicGraph is header-only; this TU anchors the library target.
