#include "mokkt/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mokkt {

using nlohmann::json;

std::vector<double> Problem::eval_objectives(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(objectives.size());
    for (const Expr& f : objectives) out.push_back(f.eval(x));
    return out;
}

std::vector<double> Problem::eval_constraints(std::span<const double> x) const {
    std::vector<double> out;
    out.reserve(constraints.size());
    for (const Expr& g : constraints) out.push_back(g.eval(x));
    return out;
}

bool Problem::inside_box(std::span<const double> x) const {
    for (std::size_t i = 0; i < box.size(); ++i)
        if (x[i] < box[i][0] || x[i] > box[i][1]) return false;
    return true;
}

double Problem::box_diagonal() const {
    double sum = 0.0;
    for (const auto& b : box) sum += (b[1] - b[0]) * (b[1] - b[0]);
    return std::sqrt(sum);
}

void Problem::validate() const {
    if (vars.empty()) throw FormatError("problem has no variables");
    if (objectives.empty()) throw FormatError("problem has no objectives");
    if (box.size() != vars.size())
        throw FormatError("box must give one [lo, hi] range per variable");
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (!(box[i][0] < box[i][1]))
            throw FormatError("box range for '" + vars[i] + "' must satisfy lo < hi");
    }
    for (const Expr& f : objectives)
        if (f.vars() != vars) throw FormatError("objective variable list mismatch");
    for (const Expr& g : constraints)
        if (g.vars() != vars) throw FormatError("constraint variable list mismatch");
    if (point) {
        if (point->size() != vars.size())
            throw FormatError("candidate point dimension does not match variable count");
        if (!inside_box(*point)) throw FormatError("candidate point lies outside the box");
    }
}

namespace {

Problem from_json(const json& j) {
    if (!j.is_object()) throw FormatError("problem file must be a JSON object");
    Problem p;
    try {
        p.vars = j.at("vars").get<std::vector<std::string>>();
        for (const auto& text : j.at("objectives"))
            p.objectives.push_back(Expr::parse(text.get<std::string>(), p.vars));
        if (j.contains("constraints"))
            for (const auto& text : j.at("constraints"))
                p.constraints.push_back(Expr::parse(text.get<std::string>(), p.vars));
        for (const auto& range : j.at("box")) {
            if (!range.is_array() || range.size() != 2)
                throw FormatError("each box entry must be [lo, hi]");
            p.box.push_back({range[0].get<double>(), range[1].get<double>()});
        }
        if (j.contains("point") && !j.at("point").is_null())
            p.point = j.at("point").get<std::vector<double>>();
        if (j.contains("id")) p.id = j.at("id").get<std::string>();
    } catch (const json::exception& ex) {
        throw FormatError(std::string("malformed problem file: ") + ex.what());
    }
    p.validate();
    return p;
}

} // namespace

Problem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open problem file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    Problem p = problem_from_json_text(buf.str());
    if (p.id.empty()) p.id = path;
    return p;
}

Problem problem_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw FormatError(std::string("invalid JSON: ") + ex.what());
    }
    return from_json(j);
}

std::string problem_to_json_text(const Problem& p) {
    json j;
    if (!p.id.empty()) j["id"] = p.id;
    j["vars"] = p.vars;
    json objs = json::array();
    for (const Expr& f : p.objectives) objs.push_back(f.str());
    j["objectives"] = objs;
    json cons = json::array();
    for (const Expr& g : p.constraints) cons.push_back(g.str());
    j["constraints"] = cons;
    json box = json::array();
    for (const auto& b : p.box) box.push_back(json::array({b[0], b[1]}));
    j["box"] = box;
    if (p.point) j["point"] = *p.point;
    return j.dump(2) + "\n";
}

} // namespace mokkt
