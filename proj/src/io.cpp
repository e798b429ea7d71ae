#include "rgc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rgc {

namespace {

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& token)
{
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("cannot parse number: '" + token + "'");
    return value;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string token;
    std::istringstream stream(s);
    while (std::getline(stream, token, sep))
        out.push_back(token);
    return out;
}

} // namespace

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("failed writing file: " + path);
}

PointSet parse_points_csv(const std::string& text, bool allow_duplicates)
{
    int declared_dim = -1;
    std::vector<Vector> points;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#') {
            auto pos = t.find("dim=");
            if (pos != std::string::npos)
                declared_dim = static_cast<int>(parse_double(trim(t.substr(pos + 4))));
            continue;
        }
        std::vector<std::string> cells = split(t, ',');
        Vector p(static_cast<int>(cells.size()));
        for (std::size_t i = 0; i < cells.size(); ++i)
            p(static_cast<int>(i)) = parse_double(trim(cells[i]));
        if (declared_dim >= 0 && p.size() != declared_dim)
            throw std::invalid_argument("points csv: row " + std::to_string(line_no) +
                                        " has " + std::to_string(p.size()) +
                                        " columns, expected " +
                                        std::to_string(declared_dim));
        points.push_back(std::move(p));
    }
    if (points.empty())
        return PointSet(std::max(declared_dim, 0), allow_duplicates);
    return PointSet::from_points(points, allow_duplicates);
}

std::string points_to_csv(const PointSet& X)
{
    std::ostringstream out;
    out << "# dim=" << X.dim() << "\n";
    for (int i = 0; i < X.size(); ++i) {
        for (int a = 0; a < X.dim(); ++a) {
            if (a > 0)
                out << ",";
            out << format_double(X.data()(i, a));
        }
        out << "\n";
    }
    return out.str();
}

PointSet read_points_csv(const std::string& path, bool allow_duplicates)
{
    return parse_points_csv(read_file(path), allow_duplicates);
}

void write_points_csv(const std::string& path, const PointSet& X)
{
    write_file(path, points_to_csv(X));
}

nlohmann::ordered_json complex_to_json(const SimplicialComplex& K)
{
    nlohmann::ordered_json j;
    j["dim_cap"] = K.dim_cap();
    j["vertices"] = K.vertices();
    nlohmann::ordered_json maximal = nlohmann::ordered_json::array();
    for (const Face& f : K.maximal_faces())
        maximal.push_back(f);
    j["maximal_faces"] = std::move(maximal);
    return j;
}

SimplicialComplex complex_from_json(const nlohmann::ordered_json& j)
{
    if (!j.contains("dim_cap") || !j.contains("vertices") || !j.contains("maximal_faces"))
        throw std::invalid_argument(
            "complex json: need dim_cap, vertices and maximal_faces");
    int cap = j.at("dim_cap").get<int>();
    SimplicialComplex K(cap);
    for (const auto& v : j.at("vertices"))
        K.add_vertex(v.get<int>());
    for (const auto& face_json : j.at("maximal_faces")) {
        Face f = face_json.get<Face>();
        if (static_cast<int>(f.size()) > cap + 1)
            throw std::invalid_argument("complex json: face larger than dim_cap allows");
        for (int v : f)
            if (!K.has_vertex(v))
                throw std::invalid_argument("complex json: face uses unknown vertex " +
                                            std::to_string(v));
        K.add_face(f);
    }
    return K;
}

SimplicialComplex read_complex_json(const std::string& path)
{
    return complex_from_json(nlohmann::ordered_json::parse(read_file(path)));
}

void write_complex_json(const std::string& path, const SimplicialComplex& K)
{
    write_file(path, complex_to_json(K).dump(2) + "\n");
}

nlohmann::ordered_json betti_to_json(const BettiVector& b)
{
    return nlohmann::ordered_json{{"field", to_string(b.field)}, {"betti", b.betti}};
}

nlohmann::ordered_json certificate_to_json(const RepresentationCertificate& cert)
{
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (int i = 0; i < cert.representation.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int a = 0; a < cert.representation.dim(); ++a)
            row.push_back(cert.representation.data()(i, a));
        points.push_back(std::move(row));
    }
    nlohmann::ordered_json witness = nlohmann::ordered_json::array();
    for (auto [k, l] : cert.witness)
        witness.push_back(nlohmann::ordered_json::array({k, l}));
    return nlohmann::ordered_json{{"flavor", to_string(cert.flavor)},
                                  {"rho", cert.rho},
                                  {"margin", cert.margin},
                                  {"points", std::move(points)},
                                  {"witness", std::move(witness)},
                                  {"target", complex_to_json(cert.target)}};
}

ConfigFile ConfigFile::parse(const std::string& text)
{
    ConfigFile cfg;
    std::istringstream stream(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        auto comment = value.find('#');
        if (comment != std::string::npos)
            value = trim(value.substr(0, comment));
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::read(const std::string& path)
{
    return parse(read_file(path));
}

bool ConfigFile::has(const std::string& section, const std::string& key) const
{
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key) const
{
    auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key))
        throw std::invalid_argument("config: missing [" + section + "] " + key);
    return s->second.at(key);
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const
{
    return has(section, key) ? get(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const
{
    return parse_double(get(section, key));
}

double ConfigFile::get_double_or(const std::string& section, const std::string& key,
                                 double fallback) const
{
    return has(section, key) ? get_double(section, key) : fallback;
}

long ConfigFile::get_long(const std::string& section, const std::string& key) const
{
    return static_cast<long>(parse_double(get(section, key)));
}

long ConfigFile::get_long_or(const std::string& section, const std::string& key,
                             long fallback) const
{
    return has(section, key) ? get_long(section, key) : fallback;
}

std::vector<double> ConfigFile::get_doubles(const std::string& section,
                                            const std::string& key) const
{
    std::istringstream stream(get(section, key));
    std::vector<double> out;
    std::string token;
    while (stream >> token)
        out.push_back(parse_double(token));
    return out;
}

Box ConfigFile::get_box(const std::string& section, const std::string& key) const
{
    std::istringstream stream(get(section, key));
    std::vector<double> lo, hi;
    std::string token;
    while (stream >> token) {
        auto parts = split(token, ',');
        if (parts.size() != 2)
            throw std::invalid_argument("config window: expected lo,hi pairs");
        lo.push_back(parse_double(trim(parts[0])));
        hi.push_back(parse_double(trim(parts[1])));
    }
    if (lo.empty())
        throw std::invalid_argument("config window: no intervals given");
    Vector vlo(static_cast<int>(lo.size())), vhi(static_cast<int>(hi.size()));
    for (std::size_t i = 0; i < lo.size(); ++i) {
        vlo(static_cast<int>(i)) = lo[i];
        vhi(static_cast<int>(i)) = hi[i];
    }
    return Box(std::move(vlo), std::move(vhi));
}

} // namespace rgc
