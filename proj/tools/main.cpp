#include "minkqm/cli.hpp"

int main(int argc, char** argv) { return minkqm::cli::run(argc, argv); }
