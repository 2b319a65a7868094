#include "cheb/run_config.hpp"

#include <cstdio>
#include <sstream>

#include "cheb/util.hpp"

namespace cheb {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << "command=" << command << "\n";
    os << "set=" << set << "\n";
    os << "ref=" << ref << "\n";
    os << "control=" << control << "\n";
    os << "xmax=" << fmt_double(x_max) << "\n";
    os << "height=" << fmt_double(height) << "\n";
    os << "q=" << q << "\n";
    os << "index=" << index << "\n";
    os << "ext=" << ext << "\n";
    os << "s=" << fmt_double(s_real) << "\n";
    os << "xcut=" << fmt_double(x_cut) << "\n";
    os << "grid-step=" << fmt_double(grid_step) << "\n";
    os << "allow-uncertified=" << (allow_uncertified ? "true" : "false") << "\n";
    os << "out=" << out << "\n";
    os << "csv=" << csv << "\n";
    os << "json=" << json << "\n";
    os << "cache-dir=" << cache_dir << "\n";
    return os.str();
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    std::size_t line_start = 0;
    std::size_t lineno = 0;
    while (line_start < text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string::npos) line_end = text.size();
        std::string line = text.substr(line_start, line_end - line_start);
        ++lineno;
        if (!line.empty() && line[0] != '#') {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw parse_error("config line " + std::to_string(lineno) + " has no '='",
                                  line_start);
            std::string key = line.substr(0, eq);
            std::string value = line.substr(eq + 1);
            try {
                if (key == "command") cfg.command = value;
                else if (key == "set") cfg.set = value;
                else if (key == "ref") cfg.ref = value;
                else if (key == "control") cfg.control = value;
                else if (key == "xmax") cfg.x_max = std::stod(value);
                else if (key == "height") cfg.height = std::stod(value);
                else if (key == "q") cfg.q = std::stoull(value);
                else if (key == "index") cfg.index = std::stoull(value);
                else if (key == "ext") cfg.ext = value;
                else if (key == "s") cfg.s_real = std::stod(value);
                else if (key == "xcut") cfg.x_cut = std::stod(value);
                else if (key == "grid-step") cfg.grid_step = std::stod(value);
                else if (key == "allow-uncertified") cfg.allow_uncertified = (value == "true");
                else if (key == "out") cfg.out = value;
                else if (key == "csv") cfg.csv = value;
                else if (key == "json") cfg.json = value;
                else if (key == "cache-dir") cfg.cache_dir = value;
                else
                    throw parse_error("unknown config key '" + key + "'", line_start);
            } catch (const parse_error&) {
                throw;
            } catch (const std::exception&) {
                throw parse_error("bad value for config key '" + key + "'", line_start + eq + 1);
            }
        }
        line_start = line_end + 1;
    }
    return cfg;
}

} // namespace cheb
