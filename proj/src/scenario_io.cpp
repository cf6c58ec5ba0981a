#include "uwr/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "uwr/errors.hpp"

namespace uwr {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw FormatError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw FormatError(where + ": unknown key '" + key + "'");
    }
}

double num(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) throw FormatError(where + ": missing key '" + key + "'");
    if (!obj[key].is_number()) throw FormatError(where + ": '" + key + "' must be a number");
    return obj[key].get<double>();
}

json link_to_json(const LinkParams& l) {
    return json{{"freq_hz", l.freq_hz},
                {"p_max_w", l.p_max_w},
                {"prop_speed", l.prop_speed},
                {"bandwidth_hz", l.bandwidth_hz}};
}

LinkParams link_from_json(const json& j, const std::string& where) {
    require_keys(j, where, {"freq_hz", "p_max_w", "prop_speed", "bandwidth_hz"});
    return {num(j, where, "freq_hz"), num(j, where, "p_max_w"),
            num(j, where, "prop_speed"), num(j, where, "bandwidth_hz")};
}

} // namespace

std::string scenario_to_json(const Scenario& s) {
    json usns = json::array();
    for (const auto& n : s.usns) {
        usns.push_back({{"id", n.id},
                        {"x", n.pos.x},
                        {"y", n.pos.y},
                        {"z", n.pos.z},
                        {"packet_bits", n.packet_bits}});
    }
    json doc{
        {"format_version", 1},
        {"nodes",
         {{"usns", usns},
          {"usv", {{"x", s.usv.pos.x}, {"y", s.usv.pos.y}, {"z", s.usv.pos.z}}},
          {"auv", {{"v_max", s.auv_template.v_max}, {"e_max", s.auv_template.e_max}}},
          {"box", {{"x", s.box_x}, {"y", s.box_y}, {"depth", s.box_depth}}}}},
        {"links",
         {{"ul", link_to_json(s.link(Link::UL))},
          {"ua", link_to_json(s.link(Link::UA))},
          {"rf", link_to_json(s.link(Link::RF))}}},
        {"channel",
         {{"eta_t", s.channel.eta_t},
          {"eta_r", s.channel.eta_r},
          {"c_lambda", s.channel.c_lambda},
          {"a_rec", s.channel.a_rec},
          {"theta0_rad", s.channel.theta0_rad},
          {"kappa", s.channel.kappa},
          {"s", s.channel.s},
          {"w", s.channel.w},
          {"mu", s.channel.mu},
          {"iota", s.channel.iota},
          {"n0_w", s.channel.n0_w},
          {"sigma_db", s.channel.sigma_db},
          {"p_min_w", s.channel.p_min_w},
          {"epsilon", s.channel.epsilon},
          {"gamma", s.channel.gamma}}},
        {"energy",
         {{"rho", s.energy.rho},
          {"eta_b", s.energy.eta_b},
          {"m_b", s.energy.m_b},
          {"g", s.energy.g},
          {"d_max", s.energy.d_max},
          {"p0", s.energy.p0},
          {"m_l", s.energy.m_l},
          {"a_l", s.energy.a_l},
          {"eta_l", s.energy.eta_l},
          {"a_s", s.energy.a_s},
          {"eta_s", s.energy.eta_s},
          {"a_e", s.energy.a_e},
          {"e_r_per_bit", s.energy.e_r_per_bit}}},
        {"run", {{"seed", s.seed}, {"n_max", s.n_max}}}};
    return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("scenario: invalid JSON: ") + e.what());
    }
    require_keys(doc, "scenario", {"format_version", "nodes", "links", "channel", "energy", "run"});
    if (!doc.contains("format_version") || doc["format_version"].get<int>() != 1)
        throw FormatError("scenario: unsupported format_version");

    Scenario s;
    const auto& nodes = doc.at("nodes");
    require_keys(nodes, "nodes", {"usns", "usv", "auv", "box"});
    for (const auto& n : nodes.at("usns")) {
        require_keys(n, "nodes.usns[]", {"id", "x", "y", "z", "packet_bits"});
        UsnNode u;
        u.id = n.at("id").get<int>();
        u.pos = {num(n, "usn", "x"), num(n, "usn", "y"), num(n, "usn", "z")};
        u.packet_bits = num(n, "usn", "packet_bits");
        s.usns.push_back(u);
    }
    const auto& usv = nodes.at("usv");
    require_keys(usv, "nodes.usv", {"x", "y", "z"});
    s.usv.pos = {num(usv, "usv", "x"), num(usv, "usv", "y"), num(usv, "usv", "z")};
    const auto& auv = nodes.at("auv");
    require_keys(auv, "nodes.auv", {"v_max", "e_max"});
    s.auv_template.v_max = num(auv, "auv", "v_max");
    s.auv_template.e_max = num(auv, "auv", "e_max");
    const auto& box = nodes.at("box");
    require_keys(box, "nodes.box", {"x", "y", "depth"});
    s.box_x = num(box, "box", "x");
    s.box_y = num(box, "box", "y");
    s.box_depth = num(box, "box", "depth");

    const auto& links = doc.at("links");
    require_keys(links, "links", {"ul", "ua", "rf"});
    s.links[static_cast<int>(Link::UL)] = link_from_json(links.at("ul"), "links.ul");
    s.links[static_cast<int>(Link::UA)] = link_from_json(links.at("ua"), "links.ua");
    s.links[static_cast<int>(Link::RF)] = link_from_json(links.at("rf"), "links.rf");

    const auto& ch = doc.at("channel");
    require_keys(ch, "channel",
                 {"eta_t", "eta_r", "c_lambda", "a_rec", "theta0_rad", "kappa", "s", "w",
                  "mu", "iota", "n0_w", "sigma_db", "p_min_w", "epsilon", "gamma"});
    s.channel.eta_t = num(ch, "channel", "eta_t");
    s.channel.eta_r = num(ch, "channel", "eta_r");
    s.channel.c_lambda = num(ch, "channel", "c_lambda");
    s.channel.a_rec = num(ch, "channel", "a_rec");
    s.channel.theta0_rad = num(ch, "channel", "theta0_rad");
    s.channel.kappa = num(ch, "channel", "kappa");
    s.channel.s = num(ch, "channel", "s");
    s.channel.w = num(ch, "channel", "w");
    s.channel.mu = num(ch, "channel", "mu");
    s.channel.iota = num(ch, "channel", "iota");
    s.channel.n0_w = num(ch, "channel", "n0_w");
    s.channel.sigma_db = num(ch, "channel", "sigma_db");
    s.channel.p_min_w = num(ch, "channel", "p_min_w");
    s.channel.epsilon = num(ch, "channel", "epsilon");
    s.channel.gamma = num(ch, "channel", "gamma");

    const auto& en = doc.at("energy");
    require_keys(en, "energy",
                 {"rho", "eta_b", "m_b", "g", "d_max", "p0", "m_l", "a_l", "eta_l", "a_s",
                  "eta_s", "a_e", "e_r_per_bit"});
    s.energy.rho = num(en, "energy", "rho");
    s.energy.eta_b = num(en, "energy", "eta_b");
    s.energy.m_b = num(en, "energy", "m_b");
    s.energy.g = num(en, "energy", "g");
    s.energy.d_max = num(en, "energy", "d_max");
    s.energy.p0 = num(en, "energy", "p0");
    s.energy.m_l = num(en, "energy", "m_l");
    s.energy.a_l = num(en, "energy", "a_l");
    s.energy.eta_l = num(en, "energy", "eta_l");
    s.energy.a_s = num(en, "energy", "a_s");
    s.energy.eta_s = num(en, "energy", "eta_s");
    s.energy.a_e = num(en, "energy", "a_e");
    s.energy.e_r_per_bit = num(en, "energy", "e_r_per_bit");

    const auto& run = doc.at("run");
    require_keys(run, "run", {"seed", "n_max"});
    s.seed = run.at("seed").get<std::uint64_t>();
    s.n_max = run.at("n_max").get<int>();
    return s;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

void write_scenario_file(const Scenario& s, const std::string& path) {
    write_text_file(path, scenario_to_json(s));
}

Scenario read_scenario_file(const std::string& path) {
    return scenario_from_json(read_text_file(path));
}

} // namespace uwr
