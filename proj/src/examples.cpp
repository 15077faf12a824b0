#include "torsor/problem.hpp"

namespace torsor {

namespace {

struct Example {
    const char* id;
    const char* doc;
};

// Z/2Z-torsors z^2 - z = pi^gamma * y over the generic fibre of the
// affine line, with the embedding basis {1, pi^alpha * x}; the model
// extension problems A1/A3/A4 only differ in gamma and alpha.
const Example kCatalog[] = {
    {"A1", R"(torsor-problem v1

[config]
p = 2

[scheme X]
ring = R
vars = y

[scheme XK]
ring = K
vars = y

[group G]
builtin = constant-Z/p
ring = K
var = x

[torsor T]
base = XK
group = G
ring = K
vars = y z
rel = z^2 - z - y
coaction y = yR
coaction z = xL + zR
point y = 0
point z = 0
basis = 1; x
matrix-var = z

[command]
op = extend
scheme = X
torsor = T
section y = 0
)"},
    {"A2", R"(torsor-problem v1

[config]
p = 2

[scheme X]
ring = R
vars = y

[group G]
builtin = constant-Z/p
ring = R
var = z

[torsor T]
base = X
group = G
ring = R
vars = y z
rel = z^2 - z - pi^2*y
coaction y = yR
coaction z = zL + zR
point y = 0
point z = 0
basis = 1; z
matrix-var = z

[command]
op = blowup
torsor = T
times = 2
lift z = 0
)"},
    {"A3", R"(torsor-problem v1

[config]
p = 2

[scheme X]
ring = R
vars = y

[scheme XK]
ring = K
vars = y

[group G]
builtin = constant-Z/p
ring = K
var = x

[torsor T]
base = XK
group = G
ring = K
vars = y z
rel = z^2 - z - pi^(-1)*y
coaction y = yR
coaction z = xL + zR
point y = 0
point z = 0
basis = 1; pi*x
matrix-var = z

[command]
op = extend
scheme = X
torsor = T
section y = 0
)"},
    {"A3-failure", R"(torsor-problem v1

[config]
p = 2

[scheme X]
ring = R
vars = y

[group G]
builtin = alpha
param = 1

[torsor T]
base = X
group = G
ring = R
vars = y z12
rel = z12^2 + pi*z12 + pi*y
coaction y = yR
coaction z12 = x12L + z12R
point y = 0
point z12 = 0
basis = 1; x12
matrix-var = z12

[command]
op = blowup
torsor = T
times = 1
lift z12 = 0
)"},
    {"A4", R"(torsor-problem v1

[config]
p = 2

[scheme X]
ring = R
vars = y

[scheme XK]
ring = K
vars = y

[group G]
builtin = constant-Z/p
ring = K
var = x

[torsor T]
base = XK
group = G
ring = K
vars = y z
rel = z^2 - z - pi^(-1)*y
coaction y = yR
coaction z = xL + zR
point y = 0
point z = 0
basis = 1; x
matrix-var = z

[command]
op = extend
scheme = X
torsor = T
section y = 0
)"},
    {"E2.5", R"(torsor-problem v1

[config]
p = 2

[scheme X]
ring = R
vars = x

[group G]
builtin = constant-Z/p
ring = R
var = y

[torsor T]
base = X
group = G
ring = R
vars = x y
rel = y^2 - y - pi*x
coaction x = xR
coaction y = yL + yR
point x = 0
point y = 0
basis = 1; y
matrix-var = y

[command]
op = blowup
torsor = T
times = 1
lift y = 0
)"},
    {"P2.6", R"(torsor-problem v1

[config]
p = 2

[scheme X]
ring = R
vars = x

[group G]
builtin = M
var = y

[torsor T]
base = X
group = G
ring = R
vars = x y
rel = pi*y^2 - y - x
coaction x = xR
coaction y = yL + yR
point x = 0
point y = 0
basis = 1; pi*y
matrix-var = y

[command]
op = verify
torsor = T
)"},
};

}  // namespace

std::vector<std::string> example_ids() {
    std::vector<std::string> ids;
    for (const auto& e : kCatalog) ids.push_back(e.id);
    return ids;
}

std::string example_problem(const std::string& id) {
    for (const auto& e : kCatalog)
        if (id == e.id) return e.doc;
    throw ProblemError("unknown example id '" + id + "'", 0);
}

}  // namespace torsor
