#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "planarmatch/error.hpp"
#include "planarmatch/graph.hpp"

namespace planarmatch {

namespace {

long long parseInteger(const std::string& token, const char* what) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        fail(Errc::MalformedInput, std::string("bad ") + what + " '" + token + "'");
    }
    if (used != token.size()) {
        fail(Errc::MalformedInput, std::string("bad ") + what + " '" + token + "'");
    }
    return value;
}

int parseId(const std::string& token, const char* what) {
    long long value = parseInteger(token, what);
    if (value < 0 || value > 1000000000) {
        fail(Errc::MalformedInput, std::string(what) + " out of range: '" + token + "'");
    }
    return static_cast<int>(value);
}

std::vector<std::string> splitTokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

}

std::string writeGraphText(const PlanarGraph& g) {
    std::ostringstream out;
    out << "planar-graph 1\n";
    out << "V " << g.vertexCount() << "\n";
    out << "E " << g.edgeCount() << "\n";
    for (const auto& [id, record] : g.edges()) {
        out << "edge " << id << " " << record.u << " " << record.v;
        if (record.weight != 0) out << " " << record.weight;
        out << "\n";
    }
    for (const auto& [vertex, ring] : g.rotation()) {
        out << "rot " << vertex;
        for (const Dart& d : ring) out << " " << d.edge << ":" << d.end;
        out << "\n";
    }
    return out.str();
}

PlanarGraph readGraphText(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    while (!lines.empty() && splitTokens(lines.back()).empty()) lines.pop_back();

    std::size_t at = 0;
    auto nextLine = [&]() -> std::vector<std::string> {
        if (at >= lines.size()) fail(Errc::MalformedInput, "unexpected end of graph text");
        return splitTokens(lines[at++]);
    };

    auto header = nextLine();
    if (header.size() != 2 || header[0] != "planar-graph" || header[1] != "1") {
        fail(Errc::MalformedInput, "missing 'planar-graph 1' header");
    }
    auto vLine = nextLine();
    if (vLine.size() != 2 || vLine[0] != "V") fail(Errc::MalformedInput, "expected 'V n' line");
    int vertexCount = parseId(vLine[1], "vertex count");
    auto eLine = nextLine();
    if (eLine.size() != 2 || eLine[0] != "E") fail(Errc::MalformedInput, "expected 'E m' line");
    int edgeCount = parseId(eLine[1], "edge count");

    std::map<EdgeId, Edge> edges;
    for (int i = 0; i < edgeCount; ++i) {
        auto tokens = nextLine();
        if ((tokens.size() != 4 && tokens.size() != 5) || tokens[0] != "edge") {
            fail(Errc::MalformedInput, "expected 'edge <id> <u> <v> [weight]' line");
        }
        EdgeId id = parseId(tokens[1], "edge id");
        Edge record;
        record.u = parseId(tokens[2], "vertex id");
        record.v = parseId(tokens[3], "vertex id");
        record.weight = tokens.size() == 5 ? parseInteger(tokens[4], "weight") : 0;
        if (!edges.emplace(id, record).second) {
            fail(Errc::MalformedInput, "duplicate edge id " + tokens[1]);
        }
    }

    std::map<VertexId, std::vector<Dart>> rotation;
    for (int i = 0; i < vertexCount; ++i) {
        auto tokens = nextLine();
        if (tokens.size() < 2 || tokens[0] != "rot") {
            fail(Errc::MalformedInput, "expected 'rot <v> ...' line");
        }
        VertexId vertex = parseId(tokens[1], "vertex id");
        std::vector<Dart> ring;
        for (std::size_t t = 2; t < tokens.size(); ++t) {
            auto colon = tokens[t].find(':');
            if (colon == std::string::npos) {
                fail(Errc::MalformedInput, "bad rotation token '" + tokens[t] + "'");
            }
            Dart d;
            d.edge = parseId(tokens[t].substr(0, colon), "edge id");
            std::string endPart = tokens[t].substr(colon + 1);
            if (endPart != "0" && endPart != "1") {
                fail(Errc::MalformedInput, "bad rotation token '" + tokens[t] + "'");
            }
            d.end = endPart == "1" ? 1 : 0;
            ring.push_back(d);
        }
        if (!rotation.emplace(vertex, std::move(ring)).second) {
            fail(Errc::MalformedInput, "duplicate rotation line for vertex " + tokens[1]);
        }
    }
    if (at != lines.size()) fail(Errc::MalformedInput, "trailing content after rotation lines");

    return PlanarGraph::build(std::move(edges), std::move(rotation));
}

PlanarGraph loadGraphFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::MalformedInput, "cannot open graph file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return readGraphText(buffer.str());
}

void saveGraphFile(const PlanarGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::MalformedInput, "cannot write graph file '" + path + "'");
    out << writeGraphText(g);
}

std::map<EdgeId, long long> readWeightsFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::MalformedInput, "cannot open weights file '" + path + "'");
    std::map<EdgeId, long long> weights;
    std::string line;
    while (std::getline(in, line)) {
        auto tokens = splitTokens(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) {
            fail(Errc::MalformedInput, "expected '<edge id> <weight>' line, got '" + line + "'");
        }
        EdgeId id = parseId(tokens[0], "edge id");
        long long value = parseInteger(tokens[1], "weight");
        if (!weights.emplace(id, value).second) {
            fail(Errc::MalformedInput, "duplicate weight for edge " + tokens[0]);
        }
    }
    return weights;
}

void saveWeightsFile(const std::map<EdgeId, long long>& weights, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::MalformedInput, "cannot write weights file '" + path + "'");
    for (const auto& [id, value] : weights) out << id << " " << value << "\n";
}

}
