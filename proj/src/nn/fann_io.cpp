#include "wristml/fann_io.hpp"

#include "wristml/error.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace wristml {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Token {
    std::string_view text;
    std::size_t line;
};

std::vector<Token> split_tokens(std::string_view s, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
            ++j;
        if (j > i)
            out.push_back({s.substr(i, j - i), line});
        i = j;
    }
    return out;
}

template <typename T>
T parse_number(const Token& tok, std::string_view what) {
    T value{};
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (!tok.text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("invalid " + std::string(what) + " '" + std::string(tok.text) + "'", tok.line);
    return value;
}

std::string activation_name(Activation a) { return a == Activation::tanh ? "tanh" : "linear"; }

Activation parse_activation(const Token& tok) {
    if (tok.text == "tanh")
        return Activation::tanh;
    if (tok.text == "linear")
        return Activation::linear;
    throw ParseError("unknown activation '" + std::string(tok.text) + "'", tok.line);
}

template <typename T>
void append_number(std::string& out, T value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, ptr);
}

// Everything the two variants share: header fields, then the connection list.
struct ParsedModel {
    std::string_view tag;
    std::vector<LayerSpec> layers;
    std::optional<int> decimal_point;
    std::size_t saturated_weights = 0;
    std::optional<InputNormalization> normalization;
    std::vector<Token> connections;
    std::size_t declared_connections = 0;
    std::size_t declared_line = 0;
    std::size_t connections_line = 0;
};

ParsedModel parse_model(std::string_view text) {
    ParsedModel m;
    std::vector<std::pair<std::string_view, std::size_t>> lines;
    {
        std::size_t start = 0;
        std::size_t line = 1;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            lines.emplace_back(text.substr(start, end - start), line++);
            start = end + 1;
        }
    }
    if (lines.empty() || trim(lines[0].first).empty())
        throw ParseError("missing version tag", 1);
    m.tag = trim(lines[0].first);
    if (m.tag != kFloatModelTag && m.tag != kFixedModelTag)
        throw ParseError("unknown version tag '" + std::string(m.tag) + "'", 1);

    std::map<std::string, std::vector<Token>> fields;
    std::map<std::string, std::size_t> field_line;
    std::size_t idx = 1;
    bool in_connections = false;
    for (; idx < lines.size(); ++idx) {
        const auto [raw, line] = lines[idx];
        const auto s = trim(raw);
        if (s.empty())
            continue;
        if (s == "connections:") {
            m.connections_line = line;
            in_connections = true;
            ++idx;
            break;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected key=value, got '" + std::string(s) + "'", line);
        const std::string key(trim(s.substr(0, eq)));
        if (fields.count(key) != 0)
            throw ParseError("duplicate field '" + key + "'", line);
        fields[key] = split_tokens(s.substr(eq + 1), line);
        field_line[key] = line;
    }
    if (!in_connections)
        throw ParseError("missing 'connections:' section", lines.back().second);

    auto require = [&](const std::string& key) -> const std::vector<Token>& {
        const auto it = fields.find(key);
        if (it == fields.end())
            throw ParseError("missing field '" + key + "'", m.connections_line);
        return it->second;
    };
    auto single = [&](const std::string& key) -> const Token& {
        const auto& toks = require(key);
        if (toks.size() != 1)
            throw ParseError("field '" + key + "' expects one value", field_line[key]);
        return toks.front();
    };

    const auto num_layers = parse_number<std::size_t>(single("num_layers"), "num_layers");
    const auto& sizes = require("layer_sizes");
    const auto& acts = require("activations");
    if (sizes.size() != num_layers)
        throw ParseError("layer_sizes lists " + std::to_string(sizes.size()) + " layers, num_layers=" +
                             std::to_string(num_layers),
                         field_line["layer_sizes"]);
    if (acts.size() != num_layers)
        throw ParseError("activations lists " + std::to_string(acts.size()) + " layers, num_layers=" +
                             std::to_string(num_layers),
                         field_line["activations"]);
    for (std::size_t l = 0; l < num_layers; ++l)
        m.layers.push_back({parse_number<std::size_t>(sizes[l], "layer size"), parse_activation(acts[l])});

    if (fields.count("decimal_point") != 0)
        m.decimal_point = parse_number<int>(single("decimal_point"), "decimal_point");
    if (fields.count("saturated_weights") != 0)
        m.saturated_weights = parse_number<std::size_t>(single("saturated_weights"), "saturated_weights");

    const bool has_mean = fields.count("input_mean") != 0;
    const bool has_std = fields.count("input_std") != 0;
    if (has_mean != has_std)
        throw ParseError("input_mean and input_std must appear together", m.connections_line);
    if (has_mean) {
        InputNormalization norm;
        for (const auto& t : fields["input_mean"])
            norm.mean.push_back(parse_number<double>(t, "input_mean value"));
        for (const auto& t : fields["input_std"])
            norm.stddev.push_back(parse_number<double>(t, "input_std value"));
        if (num_layers > 0 && (norm.mean.size() != m.layers.front().size || norm.stddev.size() != m.layers.front().size))
            throw ParseError("normalization statistics must have one entry per input", field_line["input_mean"]);
        m.normalization = std::move(norm);
    }
    for (const auto& [key, toks] : fields)
        if (key != "num_layers" && key != "layer_sizes" && key != "activations" && key != "decimal_point" &&
            key != "saturated_weights" && key != "input_mean" && key != "input_std" && key != "num_connections")
            throw ParseError("unknown field '" + key + "'", field_line[key]);

    m.declared_connections = parse_number<std::size_t>(single("num_connections"), "num_connections");
    m.declared_line = field_line["num_connections"];
    for (; idx < lines.size(); ++idx) {
        auto toks = split_tokens(lines[idx].first, lines[idx].second);
        m.connections.insert(m.connections.end(), toks.begin(), toks.end());
    }
    if (m.connections.size() != m.declared_connections)
        throw ParseError("connection section lists " + std::to_string(m.connections.size()) + " weights, " +
                             std::to_string(m.declared_connections) + " declared",
                         m.connections_line);
    return m;
}

template <typename T>
std::vector<std::vector<T>> split_matrices(const ParsedModel& m) {
    std::size_t expected = 0;
    std::vector<std::size_t> sizes;
    for (std::size_t c = 0; c + 1 < m.layers.size(); ++c) {
        sizes.push_back((m.layers[c].size + 1) * m.layers[c + 1].size);
        expected += sizes.back();
    }
    if (expected != m.declared_connections)
        throw ParseError("topology needs " + std::to_string(expected) + " weights, num_connections=" +
                             std::to_string(m.declared_connections),
                         m.declared_line);
    std::vector<std::vector<T>> out(sizes.size());
    std::size_t k = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        out[c].reserve(sizes[c]);
        for (std::size_t i = 0; i < sizes[c]; ++i, ++k)
            out[c].push_back(parse_number<T>(m.connections[k], "weight"));
    }
    return out;
}

template <typename MatrixAccess>
std::string render(std::string_view tag, const std::vector<LayerSpec>& layers,
                   const std::optional<InputNormalization>& norm, std::string extra_fields, std::size_t weight_count,
                   MatrixAccess&& write_rows) {
    std::string out(tag);
    out += "\nnum_layers=" + std::to_string(layers.size()) + "\nlayer_sizes=";
    for (std::size_t l = 0; l < layers.size(); ++l)
        out += (l ? " " : "") + std::to_string(layers[l].size);
    out += "\nactivations=";
    for (std::size_t l = 0; l < layers.size(); ++l)
        out += (l ? " " : "") + activation_name(layers[l].activation);
    out += "\n" + extra_fields;
    if (norm) {
        out += "input_mean=";
        for (std::size_t i = 0; i < norm->mean.size(); ++i) {
            if (i)
                out += ' ';
            append_number(out, norm->mean[i]);
        }
        out += "\ninput_std=";
        for (std::size_t i = 0; i < norm->stddev.size(); ++i) {
            if (i)
                out += ' ';
            append_number(out, norm->stddev[i]);
        }
        out += '\n';
    }
    out += "num_connections=" + std::to_string(weight_count) + "\nconnections:\n";
    write_rows(out);
    return out;
}

// One text line per matrix row: the weights leaving one source neuron (bias last).
template <typename T>
void write_matrix(std::string& out, std::span<const T> w, std::size_t n_out) {
    for (std::size_t r = 0; r < w.size() / n_out; ++r) {
        for (std::size_t j = 0; j < n_out; ++j) {
            if (j)
                out += ' ';
            append_number(out, w[r * n_out + j]);
        }
        out += '\n';
    }
}

}  // namespace

ModelKind detect_model_kind(std::string_view text) {
    const auto first = trim(text.substr(0, text.find('\n')));
    if (first == kFloatModelTag)
        return ModelKind::floating;
    if (first == kFixedModelTag)
        return ModelKind::fixed;
    throw ParseError("unknown version tag '" + std::string(first) + "'", 1);
}

std::string save_fann(const NetworkModel& net) {
    return render(kFloatModelTag, net.layers(), net.normalization(), "", net.weight_count(), [&](std::string& out) {
        for (std::size_t c = 0; c < net.connection_count(); ++c)
            write_matrix<double>(out, net.weights(c), net.layers()[c + 1].size);
    });
}

NetworkModel load_fann(std::string_view text) {
    const ParsedModel m = parse_model(text);
    if (m.tag != kFloatModelTag)
        throw ParseError("expected a floating-point model (" + std::string(kFloatModelTag) + ")", 1);
    if (m.decimal_point)
        throw ParseError("decimal_point is only valid in fixed-point models", m.connections_line);
    try {
        NetworkModel net(m.layers, split_matrices<double>(m));
        net.set_normalization(m.normalization);
        return net;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), m.connections_line);
    }
}

std::string save_fann_fixed(const FixedPointNet& net) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < net.connection_count(); ++c)
        count += net.weights(c).size();
    const std::string extra = "decimal_point=" + std::to_string(net.format().frac_bits()) +
                              "\nsaturated_weights=" + std::to_string(net.saturated_weights()) + "\n";
    return render(kFixedModelTag, net.layers(), net.normalization(), extra, count, [&](std::string& out) {
        for (std::size_t c = 0; c < net.connection_count(); ++c)
            write_matrix<std::int32_t>(out, net.weights(c), net.layers()[c + 1].size);
    });
}

FixedPointNet load_fann_fixed(std::string_view text) {
    const ParsedModel m = parse_model(text);
    if (m.tag != kFixedModelTag)
        throw ParseError("expected a fixed-point model (" + std::string(kFixedModelTag) + ")", 1);
    if (!m.decimal_point)
        throw ParseError("fixed-point model is missing decimal_point", m.connections_line);
    try {
        FixedPointNet net(m.layers, split_matrices<std::int32_t>(m), QFormat(*m.decimal_point), m.saturated_weights);
        net.set_normalization(m.normalization);
        return net;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), m.connections_line);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out << text;
}

}  // namespace wristml
