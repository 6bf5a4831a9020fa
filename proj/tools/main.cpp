#include <iostream>

#include "prodcheck/cli.hpp"

int main(int argc, char** argv) {
    prodcheck::CliConfig config;
    if (int code = prodcheck::parse_command_line(argc, argv, config, std::cout, std::cerr); code >= 0) return code;
    return prodcheck::run(config, std::cout, std::cerr);
}
