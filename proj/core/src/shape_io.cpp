#include "extrobin/shape_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "extrobin/errors.hpp"

namespace extrobin {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::optional<double> to_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
    return v;
}

struct Entry {
    std::string value;
    int line = 0;
};

struct Section {
    std::string kind;  // "curve" or "body"
    int line = 0;
    std::map<std::string, Entry> entries;
    std::set<std::string> used;

    const Entry* find(const std::string& key) {
        const auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        used.insert(key);
        return &it->second;
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        const Entry* e = find(key);
        if (!e) {
            if (fallback) return *fallback;
            throw ParseError("[" + kind + "] missing key '" + key + "'", line);
        }
        const auto v = to_double(e->value);
        if (!v) throw ParseError("'" + key + "' is not a number: '" + e->value + "'", e->line);
        return *v;
    }

    int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
        const double v = number(key, fallback ? std::optional<double>(*fallback) : std::nullopt);
        if (v != static_cast<int>(v))
            throw ParseError("'" + key + "' must be an integer", entries.count(key) ? entries[key].line : line);
        return static_cast<int>(v);
    }

    std::vector<double> list(const std::string& key) {
        const Entry* e = find(key);
        if (!e) return {};
        std::vector<double> out;
        if (e->value.empty()) return out;
        for (const auto& item : split(e->value, ',')) {
            const auto v = to_double(item);
            if (!v) throw ParseError("'" + key + "' has a bad entry: '" + item + "'", e->line);
            out.push_back(*v);
        }
        return out;
    }

    std::string text(const std::string& key) {
        const Entry* e = find(key);
        if (!e) throw ParseError("[" + kind + "] missing key '" + key + "'", line);
        return e->value;
    }

    void reject_unused() const {
        for (const auto& [key, e] : entries)
            if (!used.count(key)) throw ParseError("unknown key '" + key + "' in [" + kind + "]", e.line);
    }
};

// Keys accepted per section type, checked before any value is read so that a typo is
// reported at its own line rather than as a missing key at the section header.
const std::map<std::string, std::set<std::string>>& known_keys(const std::string& kind) {
    static const std::map<std::string, std::set<std::string>> curve = {
        {"fourier", {"type", "n_quad", "x_mean", "x_cos", "x_sin", "y_mean", "y_cos", "y_sin"}},
        {"circle", {"type", "n_quad", "cx", "cy", "r"}},
        {"ellipse", {"type", "n_quad", "cx", "cy", "a", "b", "rotation"}},
        {"star", {"type", "n_quad", "cx", "cy", "r", "eps", "m"}},
        {"stadium", {"type", "n_quad", "cx", "cy", "half_length", "cap_radius", "modes"}},
    };
    static const std::map<std::string, std::set<std::string>> body = {
        {"fourier", {"type", "n_quad", "d", "z_cos", "rho_sin"}},
        {"sphere", {"type", "n_quad", "d", "r"}},
        {"spheroid", {"type", "n_quad", "d", "a", "b"}},
        {"perturbed_sphere", {"type", "n_quad", "d", "seed", "amplitude", "modes"}},
    };
    return kind == "curve" ? curve : body;
}

void check_keys(Section& sec) {
    const std::string type = sec.text("type");
    const auto& table = known_keys(sec.kind);
    const auto it = table.find(type);
    if (it == table.end()) throw ParseError("unknown " + sec.kind + " type '" + type + "'", sec.entries["type"].line);
    for (const auto& [key, e] : sec.entries)
        if (!it->second.count(key)) throw ParseError("unknown key '" + key + "' for type " + type, e.line);
}

FourierSeries series(Section& sec, const std::string& prefix) {
    FourierSeries f;
    f.mean = sec.number(prefix + "_mean", 0.0);
    f.cos_coeffs = sec.list(prefix + "_cos");
    f.sin_coeffs = sec.list(prefix + "_sin");
    return f;
}

Curve2D build_curve(Section& sec) {
    check_keys(sec);
    const std::string type = sec.text("type");
    const int n_quad = sec.integer("n_quad", 1024);
    Curve2D curve = [&]() -> Curve2D {
        if (type == "fourier") return Curve2D(series(sec, "x"), series(sec, "y"), n_quad);
        const double cx = sec.number("cx", 0.0);
        const double cy = sec.number("cy", 0.0);
        if (type == "circle") return curves::circle(sec.number("r"), cx, cy, n_quad);
        if (type == "ellipse")
            return curves::ellipse(sec.number("a"), sec.number("b"), cx, cy, sec.number("rotation", 0.0),
                                   n_quad);
        if (type == "star")
            return curves::star(sec.number("r"), sec.number("eps"), sec.integer("m"), cx, cy, n_quad);
        if (type == "stadium")
            return curves::stadium(sec.number("half_length"), sec.number("cap_radius"),
                                   sec.integer("modes", 128), cx, cy, n_quad);
        throw ParseError("unknown curve type '" + type + "'", sec.entries["type"].line);
    }();
    sec.reject_unused();
    return curve;
}

AxisymBody build_body(Section& sec) {
    check_keys(sec);
    const std::string type = sec.text("type");
    const int d = sec.integer("d");
    const int n_quad = sec.integer("n_quad", 512);
    AxisymBody body = [&]() -> AxisymBody {
        if (type == "fourier") return AxisymBody(d, sec.list("z_cos"), sec.list("rho_sin"), n_quad);
        if (type == "sphere") return bodies::sphere(d, sec.number("r"), n_quad);
        if (type == "spheroid") return bodies::spheroid(d, sec.number("a"), sec.number("b"), n_quad);
        if (type == "perturbed_sphere") {
            const int seed = sec.integer("seed");
            if (seed < 0) throw ParseError("'seed' must be non-negative", sec.entries["seed"].line);
            return bodies::perturbed_sphere(d, static_cast<unsigned>(seed), sec.number("amplitude", 0.05),
                                            sec.integer("modes", 4), n_quad);
        }
        throw ParseError("unknown body type '" + type + "'", sec.entries["type"].line);
    }();
    sec.reject_unused();
    return body;
}

double spec_number(const std::string& s, const std::string& spec) {
    const auto v = to_double(s);
    if (!v) throw ParseError("bad number '" + s + "' in shape id '" + spec + "'", 0);
    return *v;
}

int spec_integer(const std::string& s, const std::string& spec) {
    const double v = spec_number(s, spec);
    if (v != static_cast<int>(v)) throw ParseError("expected an integer in shape id '" + spec + "'", 0);
    return static_cast<int>(v);
}

}  // namespace

MultiCurve2D ShapeFile::multicurve() const {
    if (curves.empty()) throw GeometryError("shape file has no [curve] section");
    return MultiCurve2D(curves);
}

ShapeFile parse_shape_file(std::istream& in) {
    std::vector<Section> sections;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", line_no);
            const std::string kind = trim(line.substr(1, line.size() - 2));
            if (kind != "curve" && kind != "body")
                throw ParseError("unknown section [" + kind + "]", line_no);
            sections.push_back({kind, line_no, {}, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
        if (sections.empty()) throw ParseError("key outside of a section", line_no);
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", line_no);
        auto& entries = sections.back().entries;
        if (entries.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
        entries[key] = {trim(line.substr(eq + 1)), line_no};
    }

    ShapeFile out;
    for (auto& sec : sections) {
        try {
            if (sec.kind == "curve")
                out.curves.push_back(build_curve(sec));
            else
                out.bodies.push_back(build_body(sec));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            // Geometry and domain failures point at the section header.
            throw ParseError(e.what(), sec.line);
        }
    }
    return out;
}

ShapeFile load_shape_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open shape file '" + path + "'", 0);
    return parse_shape_file(in);
}

MultiCurve2D parse_curve_spec(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& name = parts.empty() ? spec : parts[0];
    auto expect = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() < lo || parts.size() > hi)
            throw ParseError("wrong number of fields in shape id '" + spec + "'", 0);
    };
    if (name == "disk") {
        expect(1, 2);
        return MultiCurve2D({curves::circle(parts.size() == 2 ? spec_number(parts[1], spec) : 1.0)});
    }
    if (name == "disks") {
        expect(2, 2);
        const int n = spec_integer(parts[1], spec);
        if (n < 1) throw ParseError("disks:N needs N >= 1", 0);
        std::vector<Curve2D> c;
        for (int i = 0; i < n; ++i) c.push_back(curves::circle(1.0, 3.0 * i, 0.0));
        return MultiCurve2D(std::move(c));
    }
    if (name == "ellipse") {
        expect(2, 2);
        return MultiCurve2D({curves::ellipse(spec_number(parts[1], spec), 1.0)});
    }
    if (name == "star") {
        expect(3, 3);
        return MultiCurve2D({curves::star(1.0, spec_number(parts[1], spec), spec_integer(parts[2], spec))});
    }
    if (name == "stadium") {
        expect(2, 2);
        return MultiCurve2D({curves::stadium(spec_number(parts[1], spec), 1.0)});
    }
    throw ParseError("unknown shape id '" + spec + "'", 0);
}

AxisymBody parse_body_spec(const std::string& spec, int d) {
    const auto parts = split(spec, ':');
    const std::string& name = parts.empty() ? spec : parts[0];
    if (name == "sphere" && parts.size() == 1) return bodies::sphere(d, 1.0);
    if (name == "spheroid" && parts.size() == 2) return bodies::spheroid(d, spec_number(parts[1], spec), 1.0);
    if (name == "perturbed" && (parts.size() == 2 || parts.size() == 3)) {
        const int seed = spec_integer(parts[1], spec);
        if (seed < 0) throw ParseError("perturbed:seed needs seed >= 0", 0);
        const double amp = parts.size() == 3 ? spec_number(parts[2], spec) : 0.05;
        return bodies::perturbed_sphere(d, static_cast<unsigned>(seed), amp);
    }
    throw ParseError("unknown body id '" + spec + "'", 0);
}

}  // namespace extrobin
