// crossalg: JSON jobs for the crossed-algebra toolkit.
#include "CLI11.hpp"
#include "crossalg/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int emit(const crossalg::JobSpec& job, const crossalg::JobResult& r) {
    std::string text = crossalg::render(r.document);
    if (job.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(job.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << job.out_path << "\n";
            return 1;
        }
        f << text;
    }
    if (r.status != 0) std::cerr << r.document["error"]["message"].get<std::string>() << "\n";
    return r.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crossalg: group cohomology, crossed extensions and crossed-product algebras"};
    app.require_subcommand(1);
    crossalg::JobSpec job;
    app.add_option("--seed", job.seed, "seed for cocycle choices (0: canonical)");
    app.add_option("--cap-group-order", job.cap_group_order, "largest group order accepted")->check(CLI::PositiveNumber);
    app.add_option("--cap-enum", job.cap_enum, "largest enumeration budget")->check(CLI::PositiveNumber);
    app.add_option("--out", job.out_path, "write the result here instead of stdout");

    std::string input_path;
    std::vector<int> params;
    for (const auto& name : crossalg::cli_commands()) {
        CLI::App* sub = app.add_subcommand(name);
        if (name == "metacyclic-class")
            sub->add_option("params", params, "r s t f l")->expected(5)->required();
        else
            sub->add_option("input", input_path, "JSON input file ('-' for stdin)")->required();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    job.command = app.get_subcommands().front()->get_name();

    if (job.command == "metacyclic-class") {
        job.input = nlohmann::json{{"params", params}};
    } else {
        std::stringstream buf;
        if (input_path == "-") {
            buf << std::cin.rdbuf();
        } else {
            std::ifstream f(input_path);
            if (!f) {
                std::cerr << "cannot read " << input_path << "\n";
                return 1;
            }
            buf << f.rdbuf();
        }
        try {
            job.input = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::parse_error& e) {
            crossalg::JobResult r;
            r.status = 1;
            r.document = {{"error", {{"kind", "schema"}, {"message", std::string("malformed JSON: ") + e.what()}}}};
            return emit(job, r);
        }
    }
    return emit(job, crossalg::run(job));
}
