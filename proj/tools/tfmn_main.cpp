#include "tfmn/cli.hpp"

int main(int argc, char** argv) { return tfmn::cli::run(argc, argv); }
