#include "pslab/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pslab {

namespace {

using nlohmann::json;

void require(bool ok, const std::string& what) {
    if (!ok)
        throw std::invalid_argument(what);
}

json point_to_json(const Point& p, int n) {
    json out = json::array();
    for (int k = 0; k < n; ++k)
        out.push_back(p[k]);
    return out;
}

Point point_from_json(const json& doc, int n, const std::string& field) {
    require(doc.is_array() && int(doc.size()) == n,
            "field '" + field + "' must be an array of " + std::to_string(n) +
                " coordinates");
    Point p{0.0, 0.0, 0.0};
    for (int k = 0; k < n; ++k)
        p[k] = doc[k].get<double>();
    return p;
}

} // namespace

void save_grid_field(const GridField& u, const std::string& path) {
    u.validate();
    json header{{"n", u.n},
                {"origin", point_to_json(u.origin, u.n)},
                {"spacing", u.h},
                {"dims", {u.dims[0], u.dims[1], u.dims[2]}}};
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << header.dump() << '\n';
    // Stored verbatim; this library only targets little-endian hosts.
    out.write(reinterpret_cast<const char*>(u.values.data()),
              std::streamsize(u.values.size() * sizeof(double)));
    if (!out)
        throw std::runtime_error("short write to '" + path + "'");
}

GridField load_grid_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    std::getline(in, line);
    const json header = json::parse(line);
    GridField u;
    u.n = header.at("n").get<int>();
    require(u.n >= 1 && u.n <= 3, "grid dimension must be 1, 2 or 3");
    u.origin = point_from_json(header.at("origin"), u.n, "origin");
    u.h = header.at("spacing").get<double>();
    const auto& dims = header.at("dims");
    require(dims.is_array() && dims.size() == 3,
            "field 'dims' must have three entries");
    for (int k = 0; k < 3; ++k)
        u.dims[k] = dims[k].get<int>();
    u.values.resize(size_t(u.size()));
    in.read(reinterpret_cast<char*>(u.values.data()),
            std::streamsize(u.values.size() * sizeof(double)));
    if (in.gcount() != std::streamsize(u.values.size() * sizeof(double)))
        throw std::runtime_error("grid file '" + path + "' is truncated");
    u.validate();
    return u;
}

GridField grid_from_csv(const std::string& path, const Point& origin,
                        double spacing) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::stod(cell));
        require(rows.empty() || row.size() == rows.front().size(),
                "csv rows have inconsistent lengths");
        rows.push_back(std::move(row));
    }
    require(!rows.empty(), "csv file is empty");

    GridField u;
    u.origin = origin;
    u.h = spacing;
    const long nx = long(rows.front().size());
    const long ny = long(rows.size());
    if (ny == 1 || nx == 1) {
        u.n = 1;
        u.dims = {int(nx * ny), 1, 1};
    } else {
        u.n = 2;
        u.dims = {int(nx), int(ny), 1};
    }
    u.values.reserve(size_t(nx * ny));
    for (const auto& row : rows)
        u.values.insert(u.values.end(), row.begin(), row.end());
    u.validate();
    return u;
}

nlohmann::json spec_to_json(const ExtremalSpec& spec) {
    json knots = json::array();
    for (const auto& k : spec.profile.knots)
        knots.push_back({k.t, k.r, k.sc ? 1 : 0});
    json heights = json::array();
    json centers = json::array();
    for (size_t i = 0; i < spec.centers.heights.size(); ++i) {
        heights.push_back(spec.centers.heights[i]);
        centers.push_back(point_to_json(spec.centers.centers[i], spec.n));
    }
    return json{{"n", spec.n},
                {"family", spec.family},
                {"params", spec.params},
                {"profile", knots},
                {"centers", {{"heights", heights}, {"points", centers}}}};
}

ExtremalSpec spec_from_json(const nlohmann::json& doc) {
    const int n = doc.at("n").get<int>();
    RadialProfile profile;
    for (const auto& k : doc.at("profile")) {
        require(k.is_array() && k.size() >= 2,
                "field 'profile' entries must be [t, r] or [t, r, sc]");
        profile.knots.push_back({k[0].get<double>(), k[1].get<double>(),
                                 k.size() > 2 && k[2].get<int>() != 0});
    }
    CenterPath centers;
    const auto& cp = doc.at("centers");
    for (const auto& h : cp.at("heights"))
        centers.heights.push_back(h.get<double>());
    for (const auto& c : cp.at("points"))
        centers.centers.push_back(point_from_json(c, n, "centers.points"));
    auto spec = build_extremal(n, profile, centers);
    if (doc.contains("family"))
        spec.family = doc.at("family").get<std::string>();
    if (doc.contains("params"))
        for (const auto& [key, val] : doc.at("params").items())
            spec.params[key] = val.get<double>();
    return spec;
}

nlohmann::json decomposition_to_json(const MeasureDecomposition& dec) {
    json jumps = json::array();
    for (size_t i = 0; i < dec.jump_heights.size(); ++i)
        jumps.push_back({{"t", dec.jump_heights[i]}, {"mass", dec.jump_masses[i]}});
    json sc = json::array();
    for (size_t i = 0; i < dec.sc_heights.size(); ++i)
        sc.push_back({{"t", dec.sc_heights[i]}, {"mass", dec.sc_masses[i]}});
    json f_s = json::array();
    for (const double t : dec.thresholds)
        f_s.push_back(dec.singular_distribution(t));
    return json{{"n", dec.n},
                {"analytic", dec.analytic},
                {"ess_sup", dec.ess_sup},
                {"total_mass", dec.total_mass},
                {"thresholds", dec.thresholds},
                {"ac_density", dec.ac_density},
                {"jumps", jumps},
                {"sc", sc},
                {"f_s", f_s},
                {"top_plateau_mass", dec.top_plateau_mass},
                {"top_plateau_flagged", dec.top_plateau_flagged}};
}

nlohmann::json report_to_json(const BoundReport& report) {
    return json{{"bound_id", report.bound_id},
                {"params", report.params},
                {"lhs", report.lhs},
                {"rhs", report.rhs},
                {"ratio", report.ratio},
                {"tolerance", report.tolerance},
                {"verdict", report.verdict},
                {"vacuous", report.vacuous}};
}

YoungFunction young_from_json(const nlohmann::json& doc) {
    require(doc.is_object(), "Young function must be an object");
    if (doc.contains("power"))
        return YoungFunction::power(doc.at("power").get<double>());
    if (doc.contains("breakpoints")) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& bp : doc.at("breakpoints")) {
            require(bp.is_array() && bp.size() == 2,
                    "field 'breakpoints' must hold [t, value] pairs");
            pts.emplace_back(bp[0].get<double>(), bp[1].get<double>());
        }
        return YoungFunction::piecewise_linear(pts);
    }
    throw std::invalid_argument(
        "Young function needs a 'power' or 'breakpoints' field");
}

nlohmann::json young_to_json(const YoungFunction& phi) {
    if (phi.is_power())
        return json{{"power", phi.derivative(1.0)}};
    json pts = json::array();
    for (const auto& [x, y] : phi.breakpoints())
        pts.push_back({x, y});
    return json{{"breakpoints", pts}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw std::runtime_error("short write to '" + path + "'");
}

} // namespace pslab
