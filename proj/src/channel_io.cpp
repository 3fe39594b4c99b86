#include "sdmbc/channel_io.hpp"

#include <fstream>
#include <json.hpp>

namespace sdmbc {

namespace {

using nlohmann::ordered_json;

int read_size(const ordered_json& alphabets, const std::string& key) {
    if (!alphabets.contains(key)) throw SchemaError("channel document: missing alphabet '" + key + "'");
    const auto& v = alphabets.at(key);
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_object() && v.contains("size") && v.at("size").is_number_integer())
        return v.at("size").get<int>();
    throw SchemaError("channel document: alphabet '" + key + "' must be an integer size");
}

std::vector<double> read_numbers(const ordered_json& j, const std::string& context) {
    if (!j.is_array()) throw SchemaError("channel document: " + context + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw SchemaError("channel document: " + context + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<double> read_distortion_matrix(const ordered_json& j, int ns, int nshat,
                                           const std::string& context) {
    if (j.is_string() && j.get<std::string>() == "hamming") {
        if (ns != nshat)
            throw SchemaError("channel document: hamming distortion needs matching alphabets");
        std::vector<double> m(static_cast<size_t>(ns) * nshat, 1.0);
        for (int s = 0; s < ns; ++s) m[static_cast<size_t>(s * nshat + s)] = 0.0;
        return m;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != ns)
        throw SchemaError("channel document: " + context + " must be 'hamming' or an ns-row matrix");
    std::vector<double> m;
    m.reserve(static_cast<size_t>(ns) * nshat);
    for (const auto& row : j) {
        auto r = read_numbers(row, context + " row");
        if (static_cast<int>(r.size()) != nshat)
            throw SchemaError("channel document: " + context + " row width mismatch");
        m.insert(m.end(), r.begin(), r.end());
    }
    return m;
}

}  // namespace

ChannelDocument load_channel(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("channel document: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("alphabets") || !doc.contains("state_law") ||
        !doc.contains("transition") || !doc.contains("distortion"))
        throw SchemaError("channel document: required fields are alphabets, state_law, transition, distortion");

    const auto& alphabets = doc.at("alphabets");
    int nx = read_size(alphabets, "x");
    int ny1 = read_size(alphabets, "y1");
    int ny2 = read_size(alphabets, "y2");
    int nz = read_size(alphabets, "z");
    int ns1 = read_size(alphabets, "s1");
    int ns2 = read_size(alphabets, "s2");
    int nshat1 = alphabets.contains("shat1") ? read_size(alphabets, "shat1") : ns1;
    int nshat2 = alphabets.contains("shat2") ? read_size(alphabets, "shat2") : ns2;

    auto state = read_numbers(doc.at("state_law"), "state_law");
    if (static_cast<int>(state.size()) != ns1 * ns2)
        throw SchemaError("channel document: state_law length must be |S1|*|S2|");

    const auto& trans = doc.at("transition");
    if (!trans.is_array() || static_cast<int>(trans.size()) != ns1)
        throw SchemaError("channel document: transition must be nested [s1][s2][x]");
    std::vector<double> table;
    table.reserve(static_cast<size_t>(ns1 * ns2 * nx) * (ny1 * ny2 * nz));
    for (const auto& per_s1 : trans) {
        if (!per_s1.is_array() || static_cast<int>(per_s1.size()) != ns2)
            throw SchemaError("channel document: transition must be nested [s1][s2][x]");
        for (const auto& per_s2 : per_s1) {
            if (!per_s2.is_array() || static_cast<int>(per_s2.size()) != nx)
                throw SchemaError("channel document: transition must be nested [s1][s2][x]");
            for (const auto& row : per_s2) {
                auto r = read_numbers(row, "transition row");
                if (static_cast<int>(r.size()) != ny1 * ny2 * nz)
                    throw SchemaError("channel document: transition row length must be |Y1|*|Y2|*|Z|");
                table.insert(table.end(), r.begin(), r.end());
            }
        }
    }

    const auto& dist = doc.at("distortion");
    if (!dist.is_array() || dist.size() != 2)
        throw SchemaError("channel document: distortion must list one entry per receiver");

    ChannelDocument out{
        SdmbcSpec{nx, ny1, ny2, nz, ns1, ns2, nshat1, nshat2, Pmf(std::move(state)),
                  Kernel({ns1, ns2, nx}, {ny1, ny2, nz}, std::move(table)),
                  doc.value("name", std::string{}), {}},
        DistortionMeasure{ns1, nshat1, ns2, nshat2,
                          read_distortion_matrix(dist.at(0), ns1, nshat1, "distortion[0]"),
                          read_distortion_matrix(dist.at(1), ns2, nshat2, "distortion[1]")}};

    if (alphabets.is_object()) {
        for (const auto& [key, value] : alphabets.items()) {
            if (value.is_object() && value.contains("labels")) {
                std::vector<std::string> labels;
                for (const auto& l : value.at("labels")) labels.push_back(l.get<std::string>());
                out.spec.labels[key] = std::move(labels);
            }
        }
    }
    out.spec.validate();
    out.distortion.validate();
    return out;
}

ChannelDocument load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open channel document " + path);
    return load_channel(in);
}

void save_channel(const SdmbcSpec& spec, const DistortionMeasure& d, std::ostream& out) {
    ordered_json doc;
    if (!spec.name.empty()) doc["name"] = spec.name;
    ordered_json alphabets;
    auto put = [&](const char* key, int size) {
        auto it = spec.labels.find(key);
        if (it != spec.labels.end()) {
            alphabets[key] = ordered_json{{"size", size}, {"labels", it->second}};
        } else {
            alphabets[key] = size;
        }
    };
    put("x", spec.nx);
    put("y1", spec.ny1);
    put("y2", spec.ny2);
    put("z", spec.nz);
    put("s1", spec.ns1);
    put("s2", spec.ns2);
    put("shat1", spec.nshat1);
    put("shat2", spec.nshat2);
    doc["alphabets"] = std::move(alphabets);
    doc["state_law"] = spec.state_law.probs();

    ordered_json trans = ordered_json::array();
    for (int s1 = 0; s1 < spec.ns1; ++s1) {
        ordered_json per_s1 = ordered_json::array();
        for (int s2 = 0; s2 < spec.ns2; ++s2) {
            ordered_json per_s2 = ordered_json::array();
            for (int x = 0; x < spec.nx; ++x) {
                auto row = spec.transition.row(spec.transition_row(s1, s2, x));
                per_s2.push_back(std::vector<double>(row.begin(), row.end()));
            }
            per_s1.push_back(std::move(per_s2));
        }
        trans.push_back(std::move(per_s1));
    }
    doc["transition"] = std::move(trans);

    auto matrix = [](const std::vector<double>& m, int ns, int nshat) {
        ordered_json rows = ordered_json::array();
        for (int s = 0; s < ns; ++s)
            rows.push_back(std::vector<double>(m.begin() + static_cast<long>(s) * nshat,
                                               m.begin() + static_cast<long>(s + 1) * nshat));
        return rows;
    };
    doc["distortion"] = ordered_json::array(
        {matrix(d.d1, d.ns1, d.nshat1), matrix(d.d2, d.ns2, d.nshat2)});

    out << doc.dump(2) << '\n';
}

void save_channel_file(const SdmbcSpec& spec, const DistortionMeasure& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write channel document " + path);
    save_channel(spec, d, out);
}

}  // namespace sdmbc
