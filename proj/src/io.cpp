#include "ddz/io.hpp"

#include <fstream>
#include <sstream>

#include "ddz/errors.hpp"

namespace ddz {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw SchemaError(msg); }

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        schema(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    schema(where + ": expected a number or [re, im]");
}

int int_from_json(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        schema(where + ": expected an integer");
    }
    return j.get<int>();
}

ComplexMatrix grid_from_json(const json& j, Eigen::Index rows, Eigen::Index cols,
                             const std::string& where) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        schema(where + ": expected " + std::to_string(rows) + " rows");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            schema(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) +
                   " entries");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(row[k], where);
        }
    }
    return m;
}

ComplexVector list_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) {
        schema(where + ": expected an array");
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where);
    }
    return v;
}

template <typename T, typename F>
std::vector<T> list_of(const json& j, const std::string& where, F parse) {
    if (!j.is_array()) {
        schema(where + ": expected an array");
    }
    std::vector<T> out;
    for (const auto& item : j) {
        out.push_back(parse(item));
    }
    return out;
}

}  // namespace

json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(complex_to_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const DualMatrix& x) {
    return {{"rows", x.rows()}, {"cols", x.cols()}, {"std", to_json(x.st)}, {"inf", to_json(x.inf)}};
}

json dual_vector_to_json(const DualMatrix& v) {
    json st = json::array();
    json inf = json::array();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        st.push_back(complex_to_json(v.st(i, 0)));
        inf.push_back(complex_to_json(v.inf(i, 0)));
    }
    return {{"std", st}, {"inf", inf}};
}

json to_json(const DualScalar& s) {
    return {{"std", complex_to_json(s.st)}, {"inf", complex_to_json(s.inf)}};
}

DualMatrix dual_matrix_from_json(const json& j) {
    const std::string where = "dual matrix";
    const int rows = int_from_json(field(j, "rows", where), where + ".rows");
    const int cols = int_from_json(field(j, "cols", where), where + ".cols");
    if (rows < 0 || cols < 0) {
        schema(where + ": negative dimensions");
    }
    ComplexMatrix st = grid_from_json(field(j, "std", where), rows, cols, where + ".std");
    ComplexMatrix inf = j.contains("inf") ? grid_from_json(j["inf"], rows, cols, where + ".inf")
                                          : ComplexMatrix::Zero(rows, cols);
    try {
        return {std::move(st), std::move(inf)};
    } catch (const std::exception& e) {
        schema(where + ": " + e.what());
    }
}

DualMatrix dual_vector_from_json(const json& j) {
    const std::string where = "dual vector";
    if (j.is_array()) {
        return DualMatrix(ComplexMatrix(list_from_json(j, where)));
    }
    const ComplexVector st = list_from_json(field(j, "std", where), where + ".std");
    ComplexVector inf = ComplexVector::Zero(st.size());
    if (j.contains("inf")) {
        inf = list_from_json(j["inf"], where + ".inf");
        if (inf.size() != st.size()) {
            schema(where + ": std and inf lengths differ");
        }
    }
    try {
        return {ComplexMatrix(st), ComplexMatrix(inf)};
    } catch (const std::exception& e) {
        schema(where + ": " + e.what());
    }
}

DualScalar dual_scalar_from_json(const json& j) {
    const std::string where = "dual scalar";
    try {
        if (j.is_number() || j.is_array()) {
            return {complex_from_json(j, where)};
        }
        const cplx st = complex_from_json(field(j, "std", where), where + ".std");
        const cplx inf = j.contains("inf") ? complex_from_json(j["inf"], where + ".inf") : cplx{};
        return {st, inf};
    } catch (const std::invalid_argument& e) {
        schema(where + ": " + e.what());
    }
}

json to_json(const BlockInstance& inst) {
    json blocks = json::object();
    for (const auto& [name, m] : inst.blocks) {
        blocks[name] = to_json(m);
    }
    return {{"theorem", std::string(to_string(inst.theorem))}, {"blocks", blocks}};
}

BlockInstance block_instance_from_json(const json& j) {
    const std::string where = "block instance";
    const json& t = field(j, "theorem", where);
    if (!t.is_string()) {
        schema(where + ": theorem must be a string");
    }
    const auto theorem = block_theorem_from_string(t.get<std::string>());
    if (!theorem) {
        schema(where + ": unknown theorem \"" + t.get<std::string>() + "\"");
    }
    BlockInstance inst;
    inst.theorem = *theorem;
    const json& blocks = field(j, "blocks", where);
    for (const auto& name : block_names(inst.theorem)) {
        inst.blocks.emplace(name, dual_matrix_from_json(field(blocks, name.c_str(), where + ".blocks")));
    }
    return inst;
}

json to_json(const GraphSpec& spec) {
    json j;
    j["family"] = std::string(family_name(spec));
    if (const auto* ds = std::get_if<DoubleStar>(&spec)) {
        j["m"] = ds->m;
        j["n"] = ds->n;
        j["x"] = dual_vector_to_json(ds->x);
        j["y"] = dual_vector_to_json(ds->y);
        j["w"] = dual_vector_to_json(ds->w);
        j["v"] = dual_vector_to_json(ds->v);
        j["a"] = to_json(ds->a);
        j["b"] = to_json(ds->b);
    } else if (const auto* dls = std::get_if<DLinkedStars>(&spec)) {
        j["base"] = to_json(dls->base);
        j["r"] = dls->r;
        j["x"] = json::array();
        j["y"] = json::array();
        for (std::size_t i = 0; i < dls->x.size(); ++i) {
            j["x"].push_back(dual_vector_to_json(dls->x[i]));
            j["y"].push_back(dual_vector_to_json(dls->y[i]));
        }
    } else {
        const auto& dw = std::get<DutchWindmill>(spec);
        j["m"] = dw.m;
        j["n"] = dw.half;
        j["blades"] = json::array();
        j["x"] = json::array();
        j["y"] = json::array();
        for (int s = 0; s < dw.m; ++s) {
            j["blades"].push_back(to_json(dw.blades[s]));
            j["x"].push_back(dual_vector_to_json(dw.x[s]));
            j["y"].push_back(dual_vector_to_json(dw.y[s]));
        }
    }
    return j;
}

GraphSpec graph_spec_from_json(const json& j) {
    const std::string where = "graph spec";
    const json& fam = field(j, "family", where);
    if (!fam.is_string()) {
        schema(where + ": family must be a string");
    }
    const std::string family = fam.get<std::string>();
    if (family == "double_star") {
        DoubleStar ds;
        ds.m = int_from_json(field(j, "m", where), where + ".m");
        ds.n = int_from_json(field(j, "n", where), where + ".n");
        ds.x = dual_vector_from_json(field(j, "x", where));
        ds.y = dual_vector_from_json(field(j, "y", where));
        ds.w = dual_vector_from_json(j.contains("w") ? j["w"] : field(j, "omega", where));
        ds.v = dual_vector_from_json(field(j, "v", where));
        ds.a = dual_scalar_from_json(field(j, "a", where));
        ds.b = dual_scalar_from_json(field(j, "b", where));
        return ds;
    }
    if (family == "dlinked_stars") {
        DLinkedStars dls;
        dls.base = dual_matrix_from_json(field(j, "base", where));
        dls.r = list_of<int>(field(j, "r", where), where + ".r",
                             [&](const json& v) { return int_from_json(v, where + ".r"); });
        dls.x = list_of<DualMatrix>(field(j, "x", where), where + ".x", dual_vector_from_json);
        dls.y = list_of<DualMatrix>(field(j, "y", where), where + ".y", dual_vector_from_json);
        return dls;
    }
    if (family == "windmill") {
        const int m = int_from_json(field(j, "m", where), where + ".m");
        const int half = int_from_json(field(j, "n", where), where + ".n");
        if (m < 1 || half < 1) {
            schema(where + ": m and n must be positive");
        }
        // unit cycle weights fill in anything not given
        DutchWindmill dw = unweighted_windmill(m, half);
        if (j.contains("blades")) {
            dw.blades = list_of<DualMatrix>(j["blades"], where + ".blades", dual_matrix_from_json);
        }
        if (j.contains("x")) {
            dw.x = list_of<DualMatrix>(j["x"], where + ".x", dual_vector_from_json);
        }
        if (j.contains("y")) {
            dw.y = list_of<DualMatrix>(j["y"], where + ".y", dual_vector_from_json);
        }
        return dw;
    }
    schema(where + ": unknown family \"" + family + "\"");
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        schema("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        schema(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << j.dump(1) << '\n';
}

std::string dump_line(const json& j) { return j.dump(); }

}  // namespace ddz
