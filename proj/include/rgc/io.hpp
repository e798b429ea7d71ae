#ifndef RGC_IO_HPP
#define RGC_IO_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgc/complex.hpp"
#include "rgc/genericity.hpp"
#include "rgc/geometry.hpp"
#include "rgc/homology.hpp"
#include "rgc/poisson.hpp"

namespace rgc {

// Points travel as CSV: one point per row, d numeric columns, with a
// `# dim=d` header line. Values are parsed with exact round-to-nearest
// decimal conversion and written with round-trip precision.
PointSet parse_points_csv(const std::string& text, bool allow_duplicates = false);
std::string points_to_csv(const PointSet& X);
PointSet read_points_csv(const std::string& path, bool allow_duplicates = false);
void write_points_csv(const std::string& path, const PointSet& X);

// Complexes travel as JSON objects
// {"dim_cap": int, "vertices": [...], "maximal_faces": [[...], ...]};
// the loader rebuilds the downward closure and validates labels.
nlohmann::ordered_json complex_to_json(const SimplicialComplex& K);
SimplicialComplex complex_from_json(const nlohmann::ordered_json& j);
SimplicialComplex read_complex_json(const std::string& path);
void write_complex_json(const std::string& path, const SimplicialComplex& K);

nlohmann::ordered_json betti_to_json(const BettiVector& b);
nlohmann::ordered_json certificate_to_json(const RepresentationCertificate& cert);

/** Sectioned key-value config: `[section]` headers, `key = value` lines,
 *  `#` comments. */
class ConfigFile {
public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile read(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long get_long(const std::string& section, const std::string& key) const;
    long get_long_or(const std::string& section, const std::string& key,
                     long fallback) const;
    std::vector<double> get_doubles(const std::string& section,
                                    const std::string& key) const;

    /** Window spec: whitespace-separated `lo,hi` interval pairs. */
    Box get_box(const std::string& section, const std::string& key) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace rgc

#endif
