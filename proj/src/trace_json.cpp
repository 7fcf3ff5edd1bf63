#include "bulkrobust/trace_json.hpp"

#include <json.hpp>

#include "bulkrobust/error.hpp"

namespace bulkrobust {

namespace {

using ojson = nlohmann::ordered_json;

ojson ids(const Instance& inst, const EdgeSet& s)
{
    return ojson(inst.ids_of(s));
}

ojson chord_list(const std::vector<Chord>& chords)
{
    ojson out = ojson::array();
    for (const Chord& c : chords) {
        out.push_back(ojson::array({c.a, c.b}));
    }
    return out;
}

ojson rect_list(const std::vector<Rect>& rects)
{
    ojson out = ojson::array();
    for (const Rect& r : rects) {
        out.push_back(ojson::array({r.x0, r.x1, r.y0, r.y1}));
    }
    return out;
}

ojson face_json(const FaceRounding& fr)
{
    ojson f;
    f["face"] = fr.face;
    f["simple"] = fr.simple;
    f["scenarios"] = fr.scenario_count;
    f["chosen_links"] = fr.chosen;
    f["cost"] = fr.cost;
    f["lp_value"] = fr.lp_value;
    f["bound"] = fr.bound;
    if (fr.circle) {
        const CircleInstance& ci = *fr.circle;
        ojson c;
        c["boundary"] = ci.boundary;
        c["points"] = ci.point_count();
        c["demand"] = chord_list(ci.demand);
        c["covering"] = chord_list(ci.covering);
        c["cost"] = ci.cost;
        c["z"] = ci.z;
        f["circle"] = std::move(c);
    }
    if (fr.rectangles) {
        const RectangleSystem& rs = *fr.rectangles;
        ojson r;
        r["size"] = rs.size;
        ojson pts = ojson::array();
        for (const Point& p : rs.points) {
            pts.push_back(ojson::array({p.x, p.y}));
        }
        r["points"] = std::move(pts);
        r["left"] = rect_list(rs.left);
        r["top"] = rect_list(rs.top);
        r["left_mass"] = rs.left_mass;
        r["split_left"] = rs.split_left;
        r["split_top"] = rs.split_top;
        r["chosen_left"] = fr.chosen_left;
        r["chosen_top"] = fr.chosen_top;
        f["rectangles"] = std::move(r);
    }
    return f;
}

ojson trace_object(const Instance& inst, const SolveTrace& trace)
{
    ojson t;
    t["problem"] = std::string(to_string(trace.problem));
    t["k"] = trace.k;
    t["x0"] = ids(inst, trace.x0);
    t["x0_cost"] = trace.x0_cost;
    ojson levels = ojson::array();
    for (const LevelRecord& rec : trace.levels) {
        ojson l;
        l["level"] = rec.level;
        ojson omega = ojson::array();
        for (const auto& f : rec.omega) {
            omega.push_back(ids(inst, f));
        }
        l["omega"] = std::move(omega);
        l["contracted"] = ids(inst, rec.contracted);
        l["links"] = rec.link_count;
        l["lp_value"] = rec.lp_value;
        l["rounded_cost"] = rec.rounded_cost;
        l["added_weight"] = rec.added_weight;
        l["bound"] = rec.bound;
        l["oracle_calls"] = rec.oracle_calls;
        l["lp_rounds"] = rec.lp_rounds;
        l["face_checks"] = rec.face_checks;
        l["added"] = ids(inst, rec.added);
        ojson faces = ojson::array();
        for (const auto& fr : rec.faces) {
            faces.push_back(face_json(fr));
        }
        l["faces"] = std::move(faces);
        if (!rec.gaps.empty()) {
            ojson gaps = ojson::array();
            for (const auto& g : rec.gaps) {
                gaps.push_back(ojson{{"face", g.face}, {"integral", g.integral}, {"fractional", g.fractional}, {"ratio", g.ratio}});
            }
            l["gaps"] = std::move(gaps);
        }
        if (!rec.lp_dump.empty()) {
            l["lp"] = rec.lp_dump;
        }
        levels.push_back(std::move(l));
    }
    t["levels"] = std::move(levels);
    t["alg"] = trace.alg;
    t["guarantee"] = trace.guarantee();
    return t;
}

} // namespace

std::string trace_to_json(const Instance& inst, const SolveTrace& trace)
{
    return trace_object(inst, trace).dump() + "\n";
}

std::string solution_to_json(const Instance& inst, const SolveResult& result)
{
    ojson doc;
    doc["chosen_edges"] = ids(inst, result.chosen);
    doc["cost"] = result.cost;
    doc["trace"] = trace_object(inst, result.trace);
    return doc.dump() + "\n";
}

SolutionFile parse_solution(const Instance& inst, std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("solution: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("chosen_edges") || !doc["chosen_edges"].is_array() ||
        !doc.contains("cost") || !doc["cost"].is_number_integer()) {
        throw ParseError("solution needs integer 'cost' and array 'chosen_edges'");
    }
    SolutionFile out;
    for (const auto& v : doc["chosen_edges"]) {
        if (!v.is_number_integer()) {
            throw ParseError("solution: edge ids must be integers");
        }
        out.chosen.push_back(inst.index_of_id(v.get<int>()));
    }
    out.chosen = normalized(std::move(out.chosen));
    out.cost = doc["cost"].get<Weight>();
    return out;
}

} // namespace bulkrobust
