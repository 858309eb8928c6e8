#include "cli.hpp"

int main(int argc, char** argv) { return horoball::cli::run(argc, argv); }
